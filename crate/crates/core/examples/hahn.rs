//! Arithmetic on truncated Hahn series over each value group.
use sigmaforge::cli::{parse, Env, Sort};
use sigmaforge::hahn::Model;
use sigmaforge::instances::{GroupElement, GroupInstance, OrderedDifferenceGroup, ResidueInstance};

fn main() -> sigmaforge::Result<()> {
    for g in GroupInstance::ALL {
        let env = Env::new(ResidueInstance::QId, g, GroupElement::from_int(4));
        let model = Model::new(ResidueInstance::QId, g);
        let a = env.vf(&parse("1 + 2*T + T^2", Sort::Vf)?)?;
        let inv = a.invert(&GroupElement::from_int(4))?;
        println!("{}:", g.name());
        println!("  sigma(a)   = {}", model.sigma(&a));
        println!("  1/a        = {}", inv);
        println!("  a * (1/a)  = {}", &a * &inv);
        println!(
            "  v(a - 1)   = {}",
            (&a - &sigmaforge::hahn::HahnSeries::one()).valuation()
        );
    }
    Ok(())
}
