//! Driving the command line front end in-process.
use sigmaforge::cli::run_with;

fn main() {
    let runs: [&[&str]; 4] = [
        &["sigmaforge", "--residue", "shiftQ", "eval", "s(u0 + 1)*u2"],
        &[
            "sigmaforge",
            "--group",
            "Laurent-omega",
            "eval",
            "v(T^(g) + T^(2))",
        ],
        &["sigmaforge", "--json", "rv", "--at", "3*T^2 + 5*T^3"],
        &["sigmaforge", "oplus", "rv(1, 0)", "rv(-1, 0)"],
    ];
    for args in runs {
        let out = run_with(args.iter().copied(), None);
        print!("$ {}\n{}{}", args[1..].join(" "), out.stdout, out.stderr);
        println!("(exit {})", out.code);
    }
}
