use smallrep::root_system::RootSystem;
use smallrep::chevalley::*;
use smallrep::linalg::qz;

fn main() {
    let sys = RootSystem::build_from_str("A2").unwrap();
    match ChevalleyAlgebra::build(&sys) {
        Ok(_) => println!("A2 ok"),
        Err(e) => println!("A2 FAIL: {e}"),
    }
    let sys = RootSystem::build_from_str("A1").unwrap();
    match ChevalleyAlgebra::build(&sys) {
        Ok(_) => println!("A1 ok"),
        Err(e) => println!("A1 FAIL: {e}"),
    }
    let _ = qz(0);
}
