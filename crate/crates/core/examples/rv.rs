//! Leading terms: rv, angular component, section and the partial sum on RV.
use sigmaforge::cli::{parse, Env, Sort};
use sigmaforge::hahn::Model;
use sigmaforge::instances::{GroupElement, GroupInstance, ResidueInstance};
use sigmaforge::rv::{ac, oplus, rv, section};

fn main() -> sigmaforge::Result<()> {
    let (k, g) = (ResidueInstance::ShiftQ, GroupInstance::ZDouble);
    let env = Env::new(k, g, GroupElement::from_int(8));
    let model = Model::new(k, g);
    let a = env.vf(&parse("u0*T^2 + 5*T^3", Sort::Vf)?)?;
    let b = env.vf(&parse("-u0*T^2 + T^4", Sort::Vf)?)?;
    println!("rv(a) = {}, ac(a) = {}", rv(&a)?, ac(&a)?);
    println!("rv(sigma a) = {}", rv(&model.sigma(&a))?);
    println!("section(3) = {}", section(&GroupElement::from_int(3)));
    println!("rv(a*b) = {}", rv(&(&a * &b))?);
    match oplus(&[rv(&a)?, rv(&b)?]) {
        Ok(s) => println!("rv(a) + rv(b) = {}", s),
        Err(e) => println!("rv(a) + rv(b) is not defined: {}", e),
    }
    Ok(())
}
