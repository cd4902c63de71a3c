//! Gmsh MSH 2.2 ASCII reader and writer (triangles and tetrahedra).
//!
//! Supported element types: 2 (3-node triangle, kept as tagged surface
//! element) and 4 (4-node tetrahedron, kept with its first physical tag as
//! region tag). Points (15) and lines (1) are skipped; any other element
//! type is an error. Unknown sections are ignored, matching common writers.

use crate::error::MeshError;
use crate::mesh::Mesh;
use crate::scalar::Real;
use crate::vec3::Vec3;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// Read a MSH 2.2 ASCII file.
pub fn read_msh<T: Real>(path: &Path) -> Result<Mesh<T>, MeshError> {
    let text = fs::read_to_string(path)?;
    read_msh_str(&text)
}

/// Parse MSH 2.2 ASCII content.
pub fn read_msh_str<T: Real>(text: &str) -> Result<Mesh<T>, MeshError> {
    let mut lines = text.lines().map(str::trim).peekable();
    let mut vertices: Vec<Vec3<T>> = Vec::new();
    // Gmsh node ids need not be contiguous.
    let mut id_map: HashMap<usize, usize> = HashMap::new();
    let mut tets: Vec<[usize; 4]> = Vec::new();
    let mut region_tags: Vec<i32> = Vec::new();
    let mut surface_tris: Vec<([usize; 3], i32)> = Vec::new();
    let mut saw_nodes = false;
    let mut saw_elements = false;

    while let Some(line) = lines.next() {
        match line {
            "$MeshFormat" => {
                let fmt = lines
                    .next()
                    .ok_or_else(|| MeshError::Parse("truncated $MeshFormat".into()))?;
                let mut it = fmt.split_whitespace();
                let version = it.next().unwrap_or("");
                if !version.starts_with("2.") {
                    return Err(MeshError::Parse(format!(
                        "unsupported MSH version {version}, expected 2.x ASCII"
                    )));
                }
                let file_type = it.next().unwrap_or("0");
                if file_type != "0" {
                    return Err(MeshError::Parse("binary MSH is not supported".into()));
                }
                expect_end(&mut lines, "$EndMeshFormat")?;
            }
            "$Nodes" => {
                saw_nodes = true;
                let n: usize = parse_count(lines.next(), "$Nodes")?;
                vertices.reserve(n);
                for _ in 0..n {
                    let row = lines
                        .next()
                        .ok_or_else(|| MeshError::Parse("truncated $Nodes".into()))?;
                    let mut it = row.split_whitespace();
                    let id: usize = parse_field(it.next(), "node id")?;
                    let x: f64 = parse_field(it.next(), "node x")?;
                    let y: f64 = parse_field(it.next(), "node y")?;
                    let z: f64 = parse_field(it.next(), "node z")?;
                    id_map.insert(id, vertices.len());
                    vertices.push(Vec3::from_f64(x, y, z));
                }
                expect_end(&mut lines, "$EndNodes")?;
            }
            "$Elements" => {
                saw_elements = true;
                let n: usize = parse_count(lines.next(), "$Elements")?;
                for _ in 0..n {
                    let row = lines
                        .next()
                        .ok_or_else(|| MeshError::Parse("truncated $Elements".into()))?;
                    let mut it = row.split_whitespace();
                    let _id: usize = parse_field(it.next(), "element id")?;
                    let etype: u32 = parse_field(it.next(), "element type")?;
                    let ntags: usize = parse_field(it.next(), "tag count")?;
                    let mut tags = Vec::with_capacity(ntags);
                    for _ in 0..ntags {
                        let t: i32 = parse_field(it.next(), "element tag")?;
                        tags.push(t);
                    }
                    let physical = tags.first().copied().unwrap_or(0);
                    match etype {
                        2 => {
                            let mut tri = [0usize; 3];
                            for v in tri.iter_mut() {
                                *v = map_node(&id_map, parse_field(it.next(), "tri node")?)?;
                            }
                            surface_tris.push((tri, physical));
                        }
                        4 => {
                            let mut tet = [0usize; 4];
                            for v in tet.iter_mut() {
                                *v = map_node(&id_map, parse_field(it.next(), "tet node")?)?;
                            }
                            tets.push(tet);
                            region_tags.push(physical);
                        }
                        1 | 15 => {} // lines and points carry no data we use
                        other => return Err(MeshError::UnsupportedElement { etype: other }),
                    }
                }
                expect_end(&mut lines, "$EndElements")?;
            }
            s if s.starts_with('$') && !s.starts_with("$End") => {
                // Skip unknown section.
                let end = format!("$End{}", &s[1..]);
                for skipped in lines.by_ref() {
                    if skipped == end {
                        break;
                    }
                }
            }
            _ => {}
        }
    }

    if !saw_nodes || !saw_elements {
        return Err(MeshError::Parse(
            "missing $Nodes or $Elements section".into(),
        ));
    }
    Mesh::from_raw(vertices, tets, region_tags, surface_tris)
}

fn map_node(id_map: &HashMap<usize, usize>, id: usize) -> Result<usize, MeshError> {
    id_map
        .get(&id)
        .copied()
        .ok_or_else(|| MeshError::Parse(format!("element references unknown node {id}")))
}

fn parse_count(line: Option<&str>, section: &str) -> Result<usize, MeshError> {
    line.ok_or_else(|| MeshError::Parse(format!("truncated {section}")))?
        .trim()
        .parse()
        .map_err(|_| MeshError::Parse(format!("bad count in {section}")))
}

fn parse_field<F: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<F, MeshError> {
    tok.ok_or_else(|| MeshError::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| MeshError::Parse(format!("bad {what}")))
}

fn expect_end<'a, I: Iterator<Item = &'a str>>(
    lines: &mut I,
    end: &str,
) -> Result<(), MeshError> {
    for line in lines.by_ref() {
        if line == end {
            return Ok(());
        }
        if !line.is_empty() {
            return Err(MeshError::Parse(format!("expected {end}, found {line}")));
        }
    }
    Err(MeshError::Parse(format!("missing {end}")))
}

/// Write a MSH 2.2 ASCII file. Coordinates round-trip exactly.
pub fn write_msh<T: Real>(mesh: &Mesh<T>, path: &Path) -> Result<(), MeshError> {
    let mut out = String::new();
    out.push_str("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n");
    let _ = writeln!(out, "{}", mesh.n_vertices());
    for (i, v) in mesh.vertices.iter().enumerate() {
        let _ = writeln!(
            out,
            "{} {:e} {:e} {:e}",
            i + 1,
            v.x.to_f64().unwrap(),
            v.y.to_f64().unwrap(),
            v.z.to_f64().unwrap()
        );
    }
    out.push_str("$EndNodes\n$Elements\n");
    let _ = writeln!(out, "{}", mesh.surface_tris.len() + mesh.n_tets());
    let mut eid = 1usize;
    for (tri, tag) in &mesh.surface_tris {
        let _ = writeln!(
            out,
            "{eid} 2 2 {tag} {tag} {} {} {}",
            tri[0] + 1,
            tri[1] + 1,
            tri[2] + 1
        );
        eid += 1;
    }
    for (ti, tet) in mesh.tets.iter().enumerate() {
        let tag = mesh.region_tags[ti];
        let _ = writeln!(
            out,
            "{eid} 4 2 {tag} {tag} {} {} {} {}",
            tet[0] + 1,
            tet[1] + 1,
            tet[2] + 1,
            tet[3] + 1
        );
        eid += 1;
    }
    out.push_str("$EndElements\n");
    fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unit cube split into 5 tetrahedra, all faces radiating.
    const CUBE5: &str = "\
$MeshFormat
2.2 0 8
$EndMeshFormat
$Comment
free-form ignored text
$EndComment
$Nodes
8
1 0 0 0
2 1 0 0
3 1 1 0
4 0 1 0
5 0 0 1
6 1 0 1
7 1 1 1
8 0 1 1
$EndNodes
$Elements
17
1 15 2 0 0 1
2 1 2 0 0 1 2
3 2 2 1 1 1 2 4
4 2 2 1 1 2 3 4
5 2 2 1 1 5 6 7
6 2 2 1 1 5 7 8
7 2 2 1 1 1 2 5
8 2 2 1 1 2 6 5
9 2 2 1 1 2 3 7
10 2 2 1 1 2 7 6
11 2 2 1 1 3 4 7
12 2 2 1 1 4 8 7
13 2 2 1 1 1 4 5
14 2 2 1 1 4 8 5
15 4 2 1 1 1 2 4 5
16 4 2 1 1 2 3 4 7
17 4 2 1 1 2 4 5 7
$EndElements
";

    // CUBE5 above holds 3 of 5 tets; the other 2 exercise append below.
    fn cube5() -> Mesh<f64> {
        let mut text = CUBE5.to_string();
        // Replace count 17 with 19 and append the two remaining tets.
        text = text.replace("$Elements\n17\n", "$Elements\n19\n");
        text = text.replace(
            "17 4 2 1 1 2 4 5 7\n$EndElements",
            "17 4 2 1 1 2 4 5 7\n18 4 2 1 1 2 5 6 7\n19 4 2 1 1 4 5 7 8\n$EndElements",
        );
        read_msh_str(&text).unwrap()
    }

    #[test]
    fn five_tet_cube_volume_and_classes() {
        let mesh = cube5();
        assert_eq!(mesh.n_tets(), 5);
        assert_eq!(mesh.surface_tris.len(), 12);
        assert!((mesh.total_volume() - 1.0).abs() < 1e-14);
        let sk = crate::mesh::build_skeleton(&mesh, &[1], &[2]).unwrap();
        let c = sk.counts();
        assert_eq!(c.n_face, 16);
        assert_eq!(c.n_interior, 4);
        assert_eq!(c.n_radiating, 12);
        assert!(sk.radiating_surface_closed());
        assert_eq!(c.n_rwg, 18);
    }

    #[test]
    fn skips_points_lines_and_unknown_sections() {
        let mesh: Mesh<f64> = read_msh_str(CUBE5).unwrap();
        assert_eq!(mesh.n_tets(), 3);
        assert_eq!(mesh.surface_tris.len(), 12);
    }

    #[test]
    fn rejects_unsupported_element_type() {
        let text = CUBE5.replace("15 4 2 1 1 1 2 4 5", "15 5 2 1 1 1 2 4 5 6 7 8 3");
        let r: Result<Mesh<f64>, _> = read_msh_str(&text);
        assert!(matches!(r, Err(MeshError::UnsupportedElement { etype: 5 })));
    }

    #[test]
    fn rejects_binary_format() {
        let text = CUBE5.replace("2.2 0 8", "2.2 1 8");
        let r: Result<Mesh<f64>, _> = read_msh_str(&text);
        assert!(matches!(r, Err(MeshError::Parse(_))));
    }

    #[test]
    fn roundtrip_preserves_mesh() {
        let mesh = cube5();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cube.msh");
        write_msh(&mesh, &path).unwrap();
        let back: Mesh<f64> = read_msh(&path).unwrap();
        assert_eq!(back.n_vertices(), mesh.n_vertices());
        assert_eq!(back.tets, mesh.tets);
        assert_eq!(back.region_tags, mesh.region_tags);
        assert_eq!(back.surface_tris, mesh.surface_tris);
        for (a, b) in back.vertices.iter().zip(&mesh.vertices) {
            assert_eq!(a.x, b.x);
            assert_eq!(a.y, b.y);
            assert_eq!(a.z, b.z);
        }
    }

    #[test]
    fn noncontiguous_node_ids_are_remapped() {
        let text = "\
$MeshFormat
2.2 0 8
$EndMeshFormat
$Nodes
4
10 0 0 0
20 1 0 0
30 0 1 0
40 0 0 1
$EndNodes
$Elements
5
1 4 2 7 7 10 20 30 40
2 2 2 1 1 20 30 40
3 2 2 1 1 10 30 40
4 2 2 1 1 10 20 40
5 2 2 1 1 10 20 30
$EndElements
";
        let mesh: Mesh<f64> = read_msh_str(text).unwrap();
        assert_eq!(mesh.n_tets(), 1);
        assert_eq!(mesh.region_tags, vec![7]);
        assert!((mesh.tet_volume(0) - 1.0 / 6.0).abs() < 1e-15);
    }
}
