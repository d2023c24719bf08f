// Writes plot-ready descriptions of the tail-biting trellises before and
// after reduction, and checks that their tail-biting paths are the code.

use tbtrellis::oracle::{build_tb_trellis, enumerate_code};
use tbtrellis::tbgm::build_tbgm;
use tbtrellis::PolyMatrix;

pub fn run_example() -> tbtrellis::Result<()> {
    let dir = std::env::temp_dir();
    for (name, grid) in [("four_state", "1+D+D^2,1+D^2"), ("two_state", "D,1+D")] {
        let g = PolyMatrix::parse(grid)?;
        let trellis = build_tb_trellis(&g, 5)?;
        let paths = trellis.accepted_paths()?;
        assert_eq!(paths, enumerate_code(&build_tbgm(&g, 5)?.matrix)?);

        let path = dir.join(format!("tbtrellis_{name}.json"));
        let json = serde_json::to_string_pretty(&trellis.describe()).expect("serializable");
        std::fs::write(&path, json).expect("writable temp dir");
        println!(
            "{g}: {} states, {} tail-biting paths, written to {}",
            trellis.num_states(),
            paths.len(),
            path.display()
        );
    }
    Ok(())
}

fn main() -> tbtrellis::Result<()> {
    run_example()
}
