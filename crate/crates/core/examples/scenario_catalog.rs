//! Run every bundled scenario through the same commands as the binary.
use toroidal::cli::{catalog, run, Command, RunOptions};
use toroidal::scenario::parse_scenario;

fn main() {
    let opts = RunOptions::default();
    for name in catalog::names() {
        let text = catalog::get(&name).unwrap();
        let scenario = parse_scenario(&text).unwrap();
        for command in [Command::Check, Command::Monomialize, Command::Verify] {
            let out = run(command, Some(&scenario), &opts);
            println!("{name:>16} {:<12} exit {}", command.name(), out.exit_code);
        }
    }
    let out = run(Command::Counterexample, None, &opts);
    println!("{}", out.summary);
}
