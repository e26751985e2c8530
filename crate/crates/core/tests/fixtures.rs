//! The shipped planar_code fixtures, checked against facts computed by hand.

use sighom::acceptance::{ICOSAHEDRON_PC, OCTAHEDRON_PC};
use sighom::campaign::{read_planar_code, SignatureClasses, HEADER};

#[test]
fn icosahedron_fixture() {
    assert!(ICOSAHEDRON_PC.starts_with(HEADER));
    let gs = read_planar_code(ICOSAHEDRON_PC).unwrap();
    assert_eq!(gs.len(), 1);
    let ico = &gs[0];
    assert_eq!((ico.n(), ico.edge_count()), (12, 30));
    let faces = ico.faces();
    assert_eq!(faces.len(), 20);
    assert!(faces.iter().all(|f| f.len() == 3));
    assert!(ico.is_four_connected_triangulation());
    let g = ico.graph();
    assert!((0..12).all(|v| g.degree(v) == 5));
    assert_eq!(SignatureClasses::new(&g).unwrap().count(), 1 << 19);
}

#[test]
fn octahedron_fixture() {
    let gs = read_planar_code(OCTAHEDRON_PC).unwrap();
    let oct = &gs[0];
    assert_eq!((oct.n(), oct.edge_count(), oct.faces().len()), (6, 12, 8));
    assert!(oct.is_four_connected_triangulation());
    let g = oct.graph();
    // each vertex misses exactly one other
    assert!((0..6).all(|v| g.degree(v) == 4));
    assert_eq!(SignatureClasses::new(&g).unwrap().count(), 1 << 7);
}
