//! Writes the shipped atlas and center files into `atlases/` at the workspace root.

use std::path::PathBuf;

use multischeme::blowup::{exceptional_curve, good_point, line_x0, point_p};
use multischeme::catalog::{carpet, make_p2, p2_bundle, w_atlas, w_bundle};
use multischeme::io::AtlasFile;
use multischeme::laurent::{int, rat, LaurentPoly};

fn main() -> multischeme::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../atlases");
    std::fs::create_dir_all(&dir).expect("create atlases/");
    let write = |name: &str, text: String| std::fs::write(dir.join(name), text).expect("write file");

    for (name, nontrivial) in [("x.json", true), ("trivial_p2.json", false)] {
        let s = make_p2(-3, nontrivial)?;
        let mut file = AtlasFile::from_double(&s)?;
        file.add_cocycle(&s.atlas, &p2_bundle(1))?;
        write(name, file.render());
    }

    for (name, alpha) in [("carpet_0.json", int(0)), ("carpet_half.json", rat(1, 2))] {
        let s = carpet(&alpha, true);
        let mut file = AtlasFile::from_double(&s)?;
        file.add_cocycle(&s.atlas, &w_bundle(1, 0))?;
        file.add_cocycle(&s.atlas, &w_bundle(0, -1))?;
        write(name, file.render());
    }

    let atlas = w_atlas();
    let mut file = AtlasFile::from_atlas(&atlas);
    for (m, p) in [(-3, 1), (1, 0), (0, 1)] {
        file.add_cocycle(&atlas, &w_bundle(m, p))?;
    }
    write("w_cover.json", file.render());

    let center = |c| serde_json::to_string_pretty(&c).expect("serializable") + "\n";
    write("center_point_p.json", center(point_p()));
    write("center_line_x0.json", center(line_x0()));
    write("center_exceptional_curve.json", center(exceptional_curve()));
    let one = LaurentPoly::constant(2, int(1));
    write("center_good_z10.json", center(good_point(one, LaurentPoly::zero(2))));
    Ok(())
}
