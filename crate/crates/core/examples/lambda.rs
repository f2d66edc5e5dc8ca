//! Lambda functions and membership in a sigma(K)-span.
use sigmaforge::instances::{RatFunc, ResidueInstance};
use sigmaforge::lambda::lambda;

fn main() -> sigmaforge::Result<()> {
    let k = ResidueInstance::ShiftQ;
    let u = RatFunc::var;
    let cases = [
        (vec![u(1)], &u(1) * &u(2)),
        (vec![RatFunc::one(), u(0)], &(&u(1) * &u(0)) + &u(3)),
        (vec![u(1), u(2)], RatFunc::one()),
        (vec![RatFunc::one()], u(0)),
    ];
    for (xs, y) in cases {
        let r = lambda(k, &xs, &y)?;
        let xs: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        let ls: Vec<String> = r.coeffs.iter().map(|c| c.to_string()).collect();
        println!(
            "xs = [{}], y = {}: lambda = [{}] {:?}",
            xs.join(", "),
            y,
            ls.join(", "),
            r.reason
        );
    }
    Ok(())
}
