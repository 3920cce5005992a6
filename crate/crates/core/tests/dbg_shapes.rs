#[test]
fn dbg_open_edges() {
    let m = cskit_core::shapes::dimpled_cube(1.2, 0.5);
    let mut counts: std::collections::HashMap<(u32, u32), usize> = Default::default();
    for tri in &m.triangles {
        for e in 0..3 {
            let (u, v) = (tri[e], tri[(e + 1) % 3]);
            let key = (u.min(v), u.max(v));
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    let mut open: Vec<_> = counts.iter().filter(|&(_, &c)| c != 2).collect();
    open.sort();
    println!("open edges: {}", open.len());
    for (&(u, v), &c) in open.iter().take(12) {
        println!(
            "  ({u},{v}) count {c}: {:?} -- {:?}",
            m.vertices[u as usize], m.vertices[v as usize]
        );
    }
}
