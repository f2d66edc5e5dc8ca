//! Pseudo-Cauchy evidence for a finite prefix of a sequence.
use sigmaforge::cli::{parse, Env, Sort};
use sigmaforge::hahn::Model;
use sigmaforge::hensel::pc_analyze;
use sigmaforge::instances::{GroupElement, GroupInstance, ResidueInstance};

fn main() -> sigmaforge::Result<()> {
    let (k, g) = (ResidueInstance::QId, GroupInstance::ZDouble);
    let env = Env::new(k, g, GroupElement::from_int(8));
    let model = Model::new(k, g);
    let vf = |s: &str| env.vf(&parse(s, Sort::Vf)?);
    let prefix = ["0", "T", "T + T^2", "T + T^2 + T^3", "T + T^2 + T^3 + T^4"]
        .iter()
        .map(|s| vf(s))
        .collect::<sigmaforge::Result<Vec<_>>>()?;
    let polys = vec![
        env.poly(&parse("X", Sort::Poly)?)?,
        env.poly(&parse("X - T - T^2 - T^3 - T^4 - T^5", Sort::Poly)?)?,
    ];
    let report = pc_analyze(&model, &prefix, &polys, &[vf("T + T^2 + T^3 + T^4 + T^5")?])?;
    println!(
        "radii {:?}, pseudo-Cauchy {}",
        report.radii, report.pseudo_cauchy
    );
    for e in &report.polys {
        println!(
            "{}: values {:?}, increasing {}",
            e.poly, e.values, e.increasing
        );
    }
    println!("candidate limits {:?}", report.limits);
    Ok(())
}
