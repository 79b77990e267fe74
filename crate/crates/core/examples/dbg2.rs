use seifert_core::linalg::*;
use seifert_core::Tol;

fn main() {
    let n = exp_nilpotent(&CMat::from_fn(3,3,|i,j| if i==j+1 {cx(1.0,0.0)} else {cx(0.0,0.0)}));
    println!("M = {}", n);
    let ev = n.clone().schur().eigenvalues().unwrap();
    println!("eigenvalues: {:?}", ev.iter().collect::<Vec<_>>());
    match jordan_parts(&n, Tol::default()) {
        Ok(p) => {
            println!("groups: {}", p.groups.len());
            for g in &p.groups { println!("  lambda {} dim {}", g.lambda, g.space.dim()); }
            println!("N = {}", p.nilpotent);
        }
        Err(e) => println!("ERROR {e}"),
    }
}
