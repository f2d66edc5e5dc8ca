//! Newton lifting of an approximate root, with the per-step trace.
use sigmaforge::cli::{parse, Env, Sort};
use sigmaforge::hahn::Model;
use sigmaforge::hensel::{find_configuration, lift_root_with, LiftOptions};
use sigmaforge::instances::{GroupElement, GroupInstance, ResidueInstance};

fn main() -> sigmaforge::Result<()> {
    let (k, g) = (ResidueInstance::QId, GroupInstance::ZhalfDouble);
    let env = Env::new(k, g, GroupElement::from_int(8));
    let model = Model::new(k, g);
    let p = env.poly(&parse("s(X) - 1 - T*X", Sort::Poly)?)?;
    let a = env.vf(&parse("1", Sort::Vf)?)?;

    let conf = find_configuration(&model, &p, &a)?;
    println!("configuration: i = {}, gamma = {}", conf.i, conf.gamma);
    let out = lift_root_with(
        &model,
        &p,
        &a,
        &GroupElement::from_ratio(31, 32),
        LiftOptions::default(),
    )?;
    println!("root  = {}", out.root);
    println!(
        "v(p(a_k)) = {}",
        out.values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("p(root) = {}", p.evaluate(&model, &out.root));
    Ok(())
}
