//! Approximate sigma-preimages and the additive equation sigma(b) - eps*b = a.
use sigmaforge::cli::{parse, Env, Sort};
use sigmaforge::hahn::Model;
use sigmaforge::hensel::{approximate_preimage, solve_additive};
use sigmaforge::instances::{GroupElement, GroupInstance, ResidueInstance};

fn main() -> sigmaforge::Result<()> {
    let (k, g) = (ResidueInstance::ShiftQInv, GroupInstance::ZhalfDouble);
    let env = Env::new(k, g, GroupElement::from_int(8));
    let model = Model::new(k, g);

    let a = env.vf(&parse("u1*T + T^3", Sort::Vf)?)?;
    let b = approximate_preimage(&model, &a, &GroupElement::from_int(2))?;
    println!("b = {}, sigma(b) - a = {}", b, &model.sigma(&b) - &a);

    let eps = env.vf(&parse("T", Sort::Vf)?)?;
    let rhs = env.vf(&parse("u0 + 1", Sort::Vf)?)?;
    let target = GroupElement::from_ratio(3, 2);
    let b = solve_additive(&model, &eps, &rhs, &target)?;
    let residual = &(&model.sigma(&b) - &(&eps * &b)) - &rhs;
    println!("b = {}, v(residual) = {}", b, residual.valuation());
    Ok(())
}
