//! Taylor coefficients, complexity and the shift normal form of a difference polynomial.
use sigmaforge::cli::{parse, Env, Sort};
use sigmaforge::diffpoly::DiffPoly;
use sigmaforge::hahn::Model;
use sigmaforge::instances::{GroupElement, GroupInstance, ResidueInstance};

fn main() -> sigmaforge::Result<()> {
    let (k, g) = (ResidueInstance::ShiftQ, GroupInstance::ZTrivial);
    let env = Env::new(k, g, GroupElement::from_int(8));
    let model = Model::new(k, g);
    let p = env.poly(&parse("u0*X*s(X)^2 + s^2(X) + 3", Sort::Poly)?)?;
    println!("p = {}", p);
    println!("complexity {}", p.complexity());
    for j in p.derivative_support() {
        println!("  p_{:?} = {}", j.entries(), p.taylor_coeff(&model, &j));
    }

    let q = env.poly(&parse("s(X)^2 + s^2(X)", Sort::Poly)?)?;
    let (m, s) = q.shift_normalize()?;
    println!("S({}) = {}  (m = {})", q, s, m);
    let shifted: DiffPoly<_> = p.coeff_shift(&model, 1)?;
    println!("coefficients shifted by sigma: {}", shifted);
    Ok(())
}
