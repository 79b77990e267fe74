use seifert_core::classify::{model_triple, classify_triple, IsoType};
use seifert_core::Tol;

fn main() {
    let tols = Tol::default();
    for lambda in [1i8, -1] {
        for n in 1..=4usize {
            for eps in [1i8, -1] {
                let ty = IsoType::Tr1 { lambda, n, eps };
                let t = model_triple(&ty, tols).unwrap();
                match classify_triple(&t, tols) {
                    Ok(d) => println!("{ty} -> {d}"),
                    Err(e) => println!("{ty} -> ERROR {e}"),
                }
            }
        }
    }
}
