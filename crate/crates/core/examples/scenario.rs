//! Running a scenario through the library entry points the binary uses.

use comodcontra::cli::{self, Defaults};

fn main() {
    let text = r#"
        name = "inline"
        [groups.q8]
        builtin = "quaternion:8"
        [coalgebras.c]
        group = "q8"
        [[tasks]]
        op = "check_coalgebra"
        args = ["c"]
    "#;
    let s = cli::parse(text).unwrap();
    let o = cli::validate(&s).unwrap();
    print!("{}", cli::run(&s, &o, Defaults::default()).human());

    let report = cli::run_source("ktt-two-term", Defaults::default());
    print!("{}", report.human());
    println!("exit code {}", report.exit_code());
}
