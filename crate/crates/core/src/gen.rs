//! Deterministic generators of triangle-free planar graphs.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{PlanarGraph, VertexId};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid generator spec: {0}")]
pub struct InvalidSpec(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    Q3,
    T6,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Cube,
    Cubes(usize),
    T6,
    Cycle(usize),
    Grid(usize, usize),
    HexGrid(usize),
    /// `C_k x P_l`: `l` concentric `k`-cycles joined ring to ring.
    Cylinder(usize, usize),
    Dodecahedron,
    /// Random walk over 2-edge-connected graphs with all degrees 3 or 4.
    Walk34 { steps: usize, seed: u64 },
    RandomBipartitePlanar { n: usize, keep: f64, seed: u64 },
    /// `pattern` attached by `edges_out` edges to a random tree on
    /// `base_n` vertices.
    Gadget { pattern: Pattern, edges_out: usize, base_n: usize, seed: u64 },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cube => write!(f, "cube"),
            FamilySpec::Cubes(k) => write!(f, "cubes:{k}"),
            FamilySpec::T6 => write!(f, "t6"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::Grid(w, h) => write!(f, "grid:{w}x{h}"),
            FamilySpec::HexGrid(r) => write!(f, "hexgrid:{r}"),
            FamilySpec::Cylinder(k, l) => write!(f, "cylinder:{k}x{l}"),
            FamilySpec::Dodecahedron => write!(f, "dodecahedron"),
            FamilySpec::Walk34 { steps, seed } => write!(f, "walk34:{steps}:{seed}"),
            FamilySpec::RandomBipartitePlanar { n, keep, seed } => write!(f, "random:{n}:{seed}:{keep}"),
            FamilySpec::Gadget { pattern, edges_out, base_n, seed } => {
                let p = match pattern {
                    Pattern::Q3 => "q3",
                    Pattern::T6 => "t6",
                };
                write!(f, "gadget:{p}:{edges_out}:{base_n}:{seed}")
            }
        }
    }
}

impl FamilySpec {
    /// The same spec with its seed replaced; unseeded families are returned
    /// unchanged.
    pub fn with_seed(mut self, new: u64) -> FamilySpec {
        match &mut self {
            FamilySpec::Walk34 { seed, .. }
            | FamilySpec::RandomBipartitePlanar { seed, .. }
            | FamilySpec::Gadget { seed, .. } => *seed = new,
            _ => {}
        }
        self
    }
}

fn num<T: core::str::FromStr>(s: Option<&str>, what: &str) -> Result<T, InvalidSpec> {
    s.ok_or_else(|| InvalidSpec(format!("missing {what}")))?
        .parse()
        .map_err(|_| InvalidSpec(format!("bad {what}")))
}

impl core::str::FromStr for FamilySpec {
    type Err = InvalidSpec;

    /// Accepts `cube`, `cubes:K`, `t6`, `cycle:N`, `grid:WxH`, `hexgrid:R`,
    /// `cylinder:KxL`, `dodecahedron`, `walk34:STEPS:SEED`,
    /// `random:N:SEED[:KEEP]`, `gadget:q3|t6:EDGES:BASE_N:SEED`.
    fn from_str(s: &str) -> Result<Self, InvalidSpec> {
        let mut it = s.split(':');
        let head = it.next().unwrap_or("");
        let spec = match head {
            "cube" => FamilySpec::Cube,
            "t6" => FamilySpec::T6,
            "cubes" => FamilySpec::Cubes(num(it.next(), "cube count")?),
            "cycle" => FamilySpec::Cycle(num(it.next(), "cycle length")?),
            "hexgrid" => FamilySpec::HexGrid(num(it.next(), "radius")?),
            "grid" | "cylinder" => {
                let dims = it.next().ok_or_else(|| InvalidSpec("missing size".into()))?;
                let (w, h) = dims
                    .split_once('x')
                    .ok_or_else(|| InvalidSpec("size must be AxB".into()))?;
                let (w, h) = (num(Some(w), "width")?, num(Some(h), "height")?);
                if head == "grid" {
                    FamilySpec::Grid(w, h)
                } else {
                    FamilySpec::Cylinder(w, h)
                }
            }
            "dodecahedron" => FamilySpec::Dodecahedron,
            "walk34" => FamilySpec::Walk34 {
                steps: num(it.next(), "step count")?,
                seed: num(it.next(), "seed")?,
            },
            "random" => {
                let n = num(it.next(), "vertex count")?;
                let seed = num(it.next(), "seed")?;
                let keep = match it.next() {
                    Some(k) => num(Some(k), "keep probability")?,
                    None => 0.8,
                };
                FamilySpec::RandomBipartitePlanar { n, keep, seed }
            }
            "gadget" => {
                let pattern = match it.next() {
                    Some("q3") => Pattern::Q3,
                    Some("t6") => Pattern::T6,
                    other => return Err(InvalidSpec(format!("unknown pattern {other:?}"))),
                };
                FamilySpec::Gadget {
                    pattern,
                    edges_out: num(it.next(), "edge count")?,
                    base_n: num(it.next(), "base size")?,
                    seed: num(it.next(), "seed")?,
                }
            }
            other => return Err(InvalidSpec(format!("unknown family {other:?}"))),
        };
        if it.next().is_some() {
            return Err(InvalidSpec(format!("trailing fields in {s:?}")));
        }
        Ok(spec)
    }
}

/// Builds the graph a spec names; the result carries its embedding.
pub fn generate(spec: &FamilySpec) -> Result<PlanarGraph, InvalidSpec> {
    let mut g = match *spec {
        FamilySpec::Cube => cube(),
        FamilySpec::Cubes(k) => cubes(k),
        FamilySpec::T6 => t6(),
        FamilySpec::Cycle(n) => {
            if n < 4 {
                return Err(InvalidSpec("cycles shorter than 4 contain triangles or are not simple".into()));
            }
            cycle(n)
        }
        FamilySpec::Grid(w, h) => {
            if w == 0 || h == 0 {
                return Err(InvalidSpec("grid dimensions must be positive".into()));
            }
            grid(w, h)
        }
        FamilySpec::HexGrid(r) => {
            if r == 0 {
                return Err(InvalidSpec("hexgrid radius must be positive".into()));
            }
            hexgrid(r)
        }
        FamilySpec::Cylinder(k, l) => {
            if k < 4 || l == 0 {
                return Err(InvalidSpec("cylinder needs k >= 4 and l >= 1".into()));
            }
            cylinder(k, l)
        }
        FamilySpec::Dodecahedron => dodecahedron(),
        FamilySpec::Walk34 { steps, seed } => walk34(steps, seed),
        FamilySpec::RandomBipartitePlanar { n, keep, seed } => {
            if n < 4 || !(0.0..=1.0).contains(&keep) {
                return Err(InvalidSpec("random needs n >= 4 and keep in [0, 1]".into()));
            }
            random_bipartite_planar(n, keep, seed)
        }
        FamilySpec::Gadget { pattern, edges_out, base_n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base = random_tree(base_n, &mut rng);
            gadget_attach(&base, pattern, edges_out, &mut rng)?.graph
        }
    };
    g.name = Some(format!("{spec}"));
    if let FamilySpec::RandomBipartitePlanar { seed, .. } | FamilySpec::Gadget { seed, .. } | FamilySpec::Walk34 { seed, .. } = *spec {
        g.seed = Some(seed);
    }
    Ok(g)
}

/// Inclusive vertex-count range of the standard corpus.
pub const CORPUS_N: (usize, usize) = (4, 30);

/// The seeded test corpus: grids, honeycomb patches, pattern gadgets at
/// every attachment degree, random bipartite graphs, cylinders and
/// degree-3/4 walks, keeping members with `4 ≤ n ≤ 30`. `seed` shifts
/// every random member.
pub fn standard_corpus(seed: u64) -> Vec<(FamilySpec, PlanarGraph)> {
    let mut specs = vec![FamilySpec::Cube, FamilySpec::T6, FamilySpec::Dodecahedron];
    specs.extend((1..=3).map(FamilySpec::Cubes));
    specs.extend((4..=12).map(FamilySpec::Cycle));
    for w in 1..=6 {
        for h in w..=6 {
            specs.push(FamilySpec::Grid(w, h));
        }
    }
    specs.extend((1..=3).map(FamilySpec::HexGrid));
    for k in 4..=10 {
        for l in 2..=4 {
            specs.push(FamilySpec::Cylinder(k, l));
        }
    }
    for pattern in [Pattern::Q3, Pattern::T6] {
        for edges_out in 0..=5 {
            for (i, base_n) in [1usize, 4, 8, 12].into_iter().enumerate() {
                for s in 0..2 {
                    specs.push(FamilySpec::Gadget { pattern, edges_out, base_n, seed: seed + 2 * i as u64 + s });
                }
            }
        }
    }
    for n in (6..=30).step_by(2) {
        for (i, keep) in [1.0, 0.85, 0.7].into_iter().enumerate() {
            specs.push(FamilySpec::RandomBipartitePlanar { n, keep, seed: seed + 3 * n as u64 + i as u64 });
        }
    }
    for s in 0..40 {
        specs.push(FamilySpec::Walk34 { steps: 5 * (s as usize % 8), seed: seed + s });
    }
    let (lo, hi) = CORPUS_N;
    specs
        .into_iter()
        .filter_map(|sp| {
            let g = generate(&sp).ok()?;
            (lo..=hi).contains(&g.n()).then_some((sp, g))
        })
        .collect()
}

/// The cube with `u1..u8` as ids `0..7`: top cycle `u1u2u3u4`, bottom
/// cycle `u5u6u7u8`, and `u_i ~ u_{i+4}`.
pub fn cube() -> PlanarGraph {
    PlanarGraph::from_rotations(vec![
        vec![1, 4, 3],
        vec![2, 5, 0],
        vec![3, 6, 1],
        vec![0, 7, 2],
        vec![5, 7, 0],
        vec![1, 6, 4],
        vec![2, 7, 5],
        vec![6, 3, 4],
    ])
    .expect("cube rotation is planar")
}

/// `k` disjoint cubes; cube `i` occupies ids `8i..8i+8`.
pub fn cubes(k: usize) -> PlanarGraph {
    let mut g = PlanarGraph::new();
    for _ in 0..k {
        g = g.disjoint_union(&cube());
    }
    g
}

/// Edges of `T6` over `v1..v6` = ids `0..5`; `v5` and `v6` have degree 2.
pub const T6_EDGES: [(VertexId, VertexId); 8] = [(0, 1), (0, 2), (0, 5), (3, 1), (3, 2), (3, 5), (4, 1), (4, 2)];

pub fn t6() -> PlanarGraph {
    PlanarGraph::from_edges(6, &T6_EDGES).unwrap().embed().expect("T6 is planar")
}

pub fn cycle(n: usize) -> PlanarGraph {
    let n32 = n as VertexId;
    PlanarGraph::from_rotations((0..n32).map(|i| vec![(i + 1) % n32, (i + n32 - 1) % n32]).collect())
        .expect("cycle rotation is planar")
}

/// Embeds a straight-line drawing: neighbors sorted by angle around each
/// point, with exact integer comparisons.
fn from_drawing(points: &[(i64, i64)], edges: &[(VertexId, VertexId)]) -> PlanarGraph {
    let mut nb: Vec<Vec<VertexId>> = vec![Vec::new(); points.len()];
    for &(u, v) in edges {
        nb[u as usize].push(v);
        nb[v as usize].push(u);
    }
    let half = |d: (i64, i64)| if d.1 > 0 || (d.1 == 0 && d.0 > 0) { 0 } else { 1 };
    for (u, list) in nb.iter_mut().enumerate() {
        let o = points[u];
        list.sort_by(|&a, &b| {
            let da = (points[a as usize].0 - o.0, points[a as usize].1 - o.1);
            let db = (points[b as usize].0 - o.0, points[b as usize].1 - o.1);
            match half(da).cmp(&half(db)) {
                Ordering::Equal => {
                    let cross = da.0 * db.1 - da.1 * db.0;
                    0.cmp(&cross)
                }
                o => o,
            }
        });
    }
    PlanarGraph::from_rotations(nb).expect("straight-line drawing is planar")
}

/// The `w x h` grid; vertex `(i, j)` has id `j * w + i`.
pub fn grid(w: usize, h: usize) -> PlanarGraph {
    let id = |i: usize, j: usize| (j * w + i) as VertexId;
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for j in 0..h {
        for i in 0..w {
            pts.push((i as i64, j as i64));
            if i + 1 < w {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < h {
                edges.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    from_drawing(&pts, &edges)
}

/// A honeycomb patch with `r` rows of `r` hexagons, drawn as a brick wall.
/// Degree-1 corner vertices are trimmed.
pub fn hexgrid(r: usize) -> PlanarGraph {
    let w = 2 * r + 2;
    let h = r + 1;
    let id = |i: usize, j: usize| (j * w + i) as VertexId;
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for j in 0..h {
        for i in 0..w {
            pts.push((i as i64, j as i64));
            if i + 1 < w {
                edges.push((id(i, j), id(i + 1, j)));
            }
            if j + 1 < h && (i + j) % 2 == 0 {
                edges.push((id(i, j), id(i, j + 1)));
            }
        }
    }
    let mut g = from_drawing(&pts, &edges);
    loop {
        let leaves: BTreeSet<VertexId> = g.vertices().filter(|&v| g.degree(v) <= 1).collect();
        if leaves.is_empty() {
            break;
        }
        g = g.delete_vertices(&leaves).unwrap();
    }
    compact(&g)
}

/// `C_k x P_l`; vertex `i` of ring `r` has id `r * k + i`.
pub fn cylinder(k: usize, l: usize) -> PlanarGraph {
    if l == 1 {
        return cycle(k);
    }
    let k32 = k as VertexId;
    let mut edges = Vec::new();
    for r in 0..l as VertexId {
        for i in 0..k32 {
            edges.push((r * k32 + i, r * k32 + (i + 1) % k32));
            if (r as usize) + 1 < l {
                edges.push((r * k32 + i, (r + 1) * k32 + i));
            }
        }
    }
    PlanarGraph::from_edges(k * l, &edges).unwrap().embed().unwrap()
}

/// The dodecahedron: cubic, girth 5, twelve pentagonal faces.
pub fn dodecahedron() -> PlanarGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        // outer pentagon, middle 10-cycle, inner pentagon
        edges.push((i, (i + 1) % 5));
        edges.push((i, 5 + 2 * i));
        edges.push((5 + 2 * i, 6 + 2 * i));
        edges.push((6 + 2 * i, 5 + (2 * i + 2) % 10));
        edges.push((6 + 2 * i, 15 + i));
        edges.push((15 + i, 15 + (i + 1) % 5));
    }
    PlanarGraph::from_edges(20, &edges).unwrap().embed().unwrap()
}

/// Starts from a cylinder or the dodecahedron and applies `steps` random
/// moves that keep every degree in {3, 4}, the graph 2-edge-connected and
/// triangle-free: delete an edge between two 4-vertices, or join two
/// 3-vertices across a face of length at least 5.
pub fn walk34(steps: usize, seed: u64) -> PlanarGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = if rng.gen_bool(0.15) {
        dodecahedron()
    } else {
        cylinder(rng.gen_range(4..11), rng.gen_range(2..7))
    };
    for _ in 0..steps {
        if rng.gen_bool(0.5) {
            let es: Vec<(VertexId, VertexId)> =
                g.edges().into_iter().filter(|&(a, b)| g.degree(a) == 4 && g.degree(b) == 4).collect();
            if es.is_empty() {
                continue;
            }
            let (a, b) = es[rng.gen_range(0..es.len())];
            let h = g.delete_edge(a, b).unwrap();
            if h.bridges().is_empty() {
                g = h;
            }
        } else {
            let faces = g.faces().unwrap();
            let f = &faces[rng.gen_range(0..faces.len())];
            if f.len() < 5 {
                continue;
            }
            let b = &f.boundary;
            let (u, v) = (b[rng.gen_range(0..b.len())], b[rng.gen_range(0..b.len())]);
            if u == v || g.degree(u) != 3 || g.degree(v) != 3 || g.has_edge(u, v) {
                continue;
            }
            if g.neighbors(u).iter().any(|w| g.has_edge(*w, v)) {
                continue;
            }
            g = g.add_edge_in_face(u, v, f).unwrap();
        }
    }
    g
}

/// Relabels to ids `0..n` in increasing order of the old ids.
pub fn compact(g: &PlanarGraph) -> PlanarGraph {
    let map = g.vertices().enumerate().map(|(i, v)| (v, i as VertexId)).collect();
    let mut h = g.relabel(&map).unwrap();
    if g.is_embedded() {
        h = h.with_rotations(&h.rotations()).expect("relabeling keeps the embedding");
    }
    h
}

/// A random quadrangulation on `n` vertices grown by splitting 4-faces,
/// then a random spanning subset of its edges (each kept with probability
/// `keep`), with isolated vertices removed.
pub fn random_bipartite_planar(n: usize, keep: f64, seed: u64) -> PlanarGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = cycle(4);
    while g.n() < n {
        let faces = g.faces().unwrap();
        let f = &faces[rng.gen_range(0..faces.len())];
        let s = rng.gen_range(0..2);
        let (a, c) = (f.boundary[s], f.boundary[s + 2]);
        let (h, x) = g.add_vertex();
        let h = h.add_edge_in_face(x, a, f).unwrap();
        g = h.add_edge_in_some_face(x, c).unwrap();
    }
    let mut h = g.clone();
    for (u, v) in g.edges() {
        if !rng.gen_bool(keep) {
            h = h.delete_edge(u, v).unwrap();
        }
    }
    let iso: BTreeSet<VertexId> = h.vertices().filter(|&v| h.degree(v) == 0).collect();
    let mut out = compact(&h.delete_vertices(&iso).unwrap());
    out.seed = Some(seed);
    out
}

/// A uniformly shaped random recursive tree on `n` vertices.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> PlanarGraph {
    let edges: Vec<(VertexId, VertexId)> = (1..n)
        .map(|i| (rng.gen_range(0..i) as VertexId, i as VertexId))
        .collect();
    PlanarGraph::from_edges(n, &edges).unwrap().embed().unwrap()
}

/// A host graph together with the ids of the attached pattern, in the
/// canonical labeling order of that pattern.
#[derive(Debug, Clone)]
pub struct Gadget {
    pub graph: PlanarGraph,
    pub pattern_ids: Vec<VertexId>,
}

/// Attaches a copy of `pattern` to `base` by exactly `edges_out` edges.
///
/// Attachment vertices are taken along one pattern face (a fifth edge, when
/// requested, leaves from a vertex off that face). Each edge goes to a
/// distinct base vertex when that keeps the host planar and triangle-free,
/// and otherwise to a fresh leaf. The pattern stays induced.
pub fn gadget_attach<R: Rng>(
    base: &PlanarGraph,
    pattern: Pattern,
    edges_out: usize,
    rng: &mut R,
) -> Result<Gadget, InvalidSpec> {
    if edges_out > 5 {
        return Err(InvalidSpec("at most 5 attachment edges".into()));
    }
    let pat = match pattern {
        Pattern::Q3 => cube(),
        Pattern::T6 => t6(),
    };
    let base = if base.is_embedded() {
        base.clone()
    } else {
        base.embed().map_err(|_| InvalidSpec("base is not planar".into()))?
    };
    let shift = base.id_bound() as VertexId;
    let host = base.disjoint_union(&pat);
    let pattern_ids: Vec<VertexId> = pat.vertices().map(|v| v + shift).collect();

    let pfaces = pat.faces().unwrap();
    let pf = &pfaces[rng.gen_range(0..pfaces.len())];
    let mut sources: Vec<VertexId> = pf.boundary.iter().map(|&v| v + shift).collect();
    let rot = rng.gen_range(0..sources.len());
    sources.rotate_left(rot);
    if edges_out == 5 {
        let off = pat.vertices().find(|v| !pf.contains(*v)).unwrap() + shift;
        sources.push(off);
    }
    sources.truncate(edges_out);

    // candidate targets: distinct vertices along a random base face
    let mut targets: Vec<VertexId> = Vec::new();
    if base.m() > 0 {
        let bfaces = base.faces().unwrap();
        let bf = &bfaces[rng.gen_range(0..bfaces.len())];
        for &v in bf.boundary.iter().rev() {
            if !targets.contains(&v) {
                targets.push(v);
            }
        }
        let r = rng.gen_range(0..targets.len());
        targets.rotate_left(r);
    } else if let Some(v) = base.vertices().next() {
        targets.push(v);
    }

    let mut g = host;
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    for (k, &s) in sources.iter().enumerate() {
        let mut placed = false;
        if k < 4 && rng.gen_bool(0.75) {
            if let Some(&t) = targets.get(k) {
                if !used.contains(&t) {
                    let cand = g.add_edge_unembedded(s, t).unwrap();
                    if cand.is_triangle_free() {
                        if let Ok(e) = cand.embed() {
                            g = e;
                            used.insert(t);
                            placed = true;
                        }
                    }
                }
            }
        }
        if !placed {
            let (h, leaf) = g.add_vertex();
            g = h.add_edge_in_some_face(s, leaf).unwrap();
        }
    }
    debug_assert_eq!(
        g.subgraph_degree(&pattern_ids.iter().copied().collect()).unwrap(),
        edges_out
    );
    Ok(Gadget { graph: g, pattern_ids })
}
