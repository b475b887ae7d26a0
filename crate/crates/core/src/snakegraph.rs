//! Snake and band graphs of curves with their perfect matchings. The
//! polynomials and vectors of a curve are read off from the matchings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::curve::{Curve, Shape, Tag};
use crate::error::{Error, Result};
use crate::mutation::ExchangeMatrix;
use crate::poly::LaurentPoly;
use crate::surface::{m3, IdealTriangulation, TaggedTriangulation};

/// The four sides of a tile. `L` and `R` are the ends of the diagonal, `D`
/// lies in the triangle after the crossing and `B` in the one before.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    LD,
    DR,
    RB,
    BL,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 4] = [EdgeKind::LD, EdgeKind::DR, EdgeKind::RB, EdgeKind::BL];

    fn ends(self) -> (usize, usize) {
        // local vertex order: L, D, R, B
        match self {
            EdgeKind::LD => (0, 1),
            EdgeKind::DR => (1, 2),
            EdgeKind::RB => (2, 3),
            EdgeKind::BL => (3, 0),
        }
    }
}

impl fmt::Display for EdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EdgeKind::LD => "LD",
            EdgeKind::DR => "DR",
            EdgeKind::RB => "RB",
            EdgeKind::BL => "BL",
        };
        f.write_str(s)
    }
}

/// Opposite-edge pair that counts as the raised position of a tile.
const UP: [EdgeKind; 2] = [EdgeKind::DR, EdgeKind::BL];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    /// Label of the crossed arc.
    pub diagonal: usize,
    /// Side labels in the order `LD, DR, RB, BL`.
    pub labels: [usize; 4],
    /// Triangle and exit slot before the crossing.
    pub before: (usize, usize),
    /// Triangle and entry slot after the crossing.
    pub after: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: usize,
    /// Tiles containing this edge, with the side it plays in each.
    pub tiles: Vec<(usize, EdgeKind)>,
}

#[derive(Clone, Debug)]
pub struct SnakeGraph {
    pub tiles: Vec<Tile>,
    pub band: bool,
    /// Side of tile `i` glued to tile `i+1` (cyclically for bands).
    pub glue: Vec<EdgeKind>,
    n: usize,
    num_vertices: usize,
    edges: Vec<Edge>,
    /// `tile_edges[i][kind]` is the edge index.
    tile_edges: Vec<[usize; 4]>,
    /// For bands: the snake graph obtained by cutting the closing edge, and
    /// the two copies of that edge in it.
    cut: Option<(Box<SnakeGraph>, usize, usize)>,
}

/// Sorted list of edge indices.
pub type Matching = Vec<usize>;

fn kind_index(k: EdgeKind) -> usize {
    k as usize
}

fn tiles_of(t: &IdealTriangulation, c: &Curve) -> Result<Vec<Tile>> {
    if c.tags.contains(&Tag::Notched) && !c.is_closed() {
        return Err(Error::Unsupported("snake graphs of notched arcs".into()));
    }
    let tris = t.triangles();
    c.crossings()
        .into_iter()
        .map(|(tri, s)| {
            let (u, k) = t.partner(tri, s).expect("validated crossing");
            if t.is_self_folded(tri) || t.is_self_folded(u) {
                return Err(Error::Unsupported(
                    "snake graphs through self-folded triangles".into(),
                ));
            }
            Ok(Tile {
                diagonal: tris[tri][s],
                labels: [
                    tris[u][m3(k + 1)],
                    tris[u][m3(k + 2)],
                    tris[tri][m3(s + 1)],
                    tris[tri][m3(s + 2)],
                ],
                before: (tri, s),
                after: (u, k),
            })
        })
        .collect()
}

struct Uf(Vec<usize>);

impl Uf {
    fn find(&mut self, a: usize) -> usize {
        let mut a = a;
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }
    fn union(&mut self, a: usize, b: usize) {
        let (x, y) = (self.find(a), self.find(b));
        if x != y {
            self.0[x.max(y)] = x.min(y);
        }
    }
}

/// Corner index, within the triangle, of each local tile vertex on that side.
fn corner_in_after(tile: &Tile) -> [(usize, Option<usize>); 4] {
    let k = tile.after.1;
    [
        (0, Some(m3(k + 1))),
        (1, Some(m3(k + 2))),
        (2, Some(k)),
        (3, None),
    ]
}

fn corner_in_before(tile: &Tile) -> [(usize, Option<usize>); 4] {
    let s = tile.before.1;
    [(0, Some(s)), (1, None), (2, Some(m3(s + 1))), (3, Some(m3(s + 2)))]
}

fn side_in_after(tile: &Tile, kind: EdgeKind) -> Option<usize> {
    let k = tile.after.1;
    match kind {
        EdgeKind::LD => Some(m3(k + 1)),
        EdgeKind::DR => Some(m3(k + 2)),
        _ => None,
    }
}

fn side_in_before(tile: &Tile, kind: EdgeKind) -> Option<usize> {
    let s = tile.before.1;
    match kind {
        EdgeKind::RB => Some(m3(s + 1)),
        EdgeKind::BL => Some(m3(s + 2)),
        _ => None,
    }
}

impl SnakeGraph {
    fn assemble(n: usize, tiles: Vec<Tile>, band: bool) -> Result<Self> {
        let mut g = Self::glue_tiles(n, tiles, band)?;
        if band {
            let cut = Self::glue_tiles(n, g.tiles.clone(), false)?;
            let d = g.tiles.len();
            let close = g.glue[d - 1];
            let first = *EdgeKind::ALL
                .iter()
                .find(|&&k| {
                    let e = g.tile_edge(0, k);
                    g.edges[e].tiles.contains(&(d - 1, close))
                })
                .expect("closing edge lies on the first tile");
            let (e1, e2) = (cut.tile_edge(0, first), cut.tile_edge(d - 1, close));
            g.cut = Some((Box::new(cut), e1, e2));
        }
        Ok(g)
    }

    fn glue_tiles(n: usize, tiles: Vec<Tile>, band: bool) -> Result<Self> {
        let d = tiles.len();
        if d == 0 {
            return Err(Error::InvalidCurve("a snake graph needs a crossing".into()));
        }
        if band && d < 2 {
            return Err(Error::InvalidCurve("a band graph needs two crossings".into()));
        }
        if d > 60 {
            return Err(Error::Unsupported(format!("{d} tiles exceed the 60-tile limit")));
        }
        let mut vuf = Uf((0..4 * d).collect());
        let mut euf = Uf((0..4 * d).collect());
        let mut glue = Vec::with_capacity(d);
        let pairs = if band { d } else { d - 1 };
        for i in 0..pairs {
            let j = (i + 1) % d;
            let (a, b) = (&tiles[i], &tiles[j]);
            let delta = a.after.0;
            debug_assert_eq!(delta, b.before.0);
            let sigma = (0..3)
                .find(|&x| x != a.after.1 && x != b.before.1)
                .ok_or_else(|| Error::InvalidCurve("curve backtracks".into()))?;
            for corner in [sigma, m3(sigma + 1)] {
                let va = corner_in_after(a)
                    .iter()
                    .find(|(_, c)| *c == Some(corner))
                    .map(|(v, _)| *v)
                    .expect("corner of the shared triangle");
                let vb = corner_in_before(b)
                    .iter()
                    .find(|(_, c)| *c == Some(corner))
                    .map(|(v, _)| *v)
                    .expect("corner of the shared triangle");
                vuf.union(4 * i + va, 4 * j + vb);
            }
            let ka = *EdgeKind::ALL
                .iter()
                .find(|&&k| side_in_after(a, k) == Some(sigma))
                .expect("glued side");
            let kb = *EdgeKind::ALL
                .iter()
                .find(|&&k| side_in_before(b, k) == Some(sigma))
                .expect("glued side");
            euf.union(4 * i + kind_index(ka), 4 * j + kind_index(kb));
            glue.push(ka);
        }
        let mut vid = BTreeMap::new();
        for x in 0..4 * d {
            let r = vuf.find(x);
            let next = vid.len();
            vid.entry(r).or_insert(next);
        }
        let mut eid: BTreeMap<usize, usize> = BTreeMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        let mut tile_edges = vec![[0usize; 4]; d];
        for (i, tile) in tiles.iter().enumerate() {
            for kind in EdgeKind::ALL {
                let x = 4 * i + kind_index(kind);
                let r = euf.find(x);
                let (lu, lv) = kind.ends();
                let u = vid[&vuf.find(4 * i + lu)];
                let v = vid[&vuf.find(4 * i + lv)];
                let idx = match eid.get(&r) {
                    Some(&e) => {
                        let ed = &edges[e];
                        if (ed.u, ed.v) != (u.min(v), u.max(v)) {
                            return Err(Error::Matching("inconsistent edge gluing".into()));
                        }
                        e
                    }
                    None => {
                        eid.insert(r, edges.len());
                        edges.push(Edge {
                            u: u.min(v),
                            v: u.max(v),
                            label: tile.labels[kind_index(kind)],
                            tiles: Vec::new(),
                        });
                        edges.len() - 1
                    }
                };
                edges[idx].tiles.push((i, kind));
                tile_edges[i][kind_index(kind)] = idx;
            }
        }
        Ok(SnakeGraph {
            tiles,
            band,
            glue,
            n,
            num_vertices: vid.len(),
            edges,
            tile_edges,
            cut: None,
        })
    }

    /// For band graphs, the cut snake graph and the two copies of the
    /// closing edge in it.
    pub fn cut_graph(&self) -> Option<(&SnakeGraph, usize, usize)> {
        self.cut.as_ref().map(|(g, a, b)| (g.as_ref(), *a, *b))
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile_edge(&self, tile: usize, kind: EdgeKind) -> usize {
        self.tile_edges[tile][kind_index(kind)]
    }

    fn last_use(&self) -> Vec<usize> {
        let mut last = vec![0usize; self.num_vertices];
        for (e, ed) in self.edges.iter().enumerate() {
            last[ed.u] = last[ed.u].max(e);
            last[ed.v] = last[ed.v].max(e);
        }
        last
    }

    /// Perfect matchings of a snake graph, or good matchings of a band graph,
    /// by transfer DP. Sorted.
    pub fn enumerate_matchings(&self) -> Vec<Matching> {
        match &self.cut {
            None => self.perfect_matchings_dp(),
            Some((cut, e1, e2)) => self.descend(cut, cut.perfect_matchings_dp(), *e1, *e2),
        }
    }

    /// Same set as [`SnakeGraph::enumerate_matchings`], found by exhaustive
    /// subset search.
    pub fn brute_force_matchings(&self) -> Vec<Matching> {
        match &self.cut {
            None => self.perfect_matchings_brute(),
            Some((cut, e1, e2)) => self.descend(cut, cut.perfect_matchings_brute(), *e1, *e2),
        }
    }

    /// A perfect matching of the cut graph is good when it uses a copy of
    /// the cut edge; dropping the unpaired copy gives a matching of the band.
    fn descend(&self, cut: &SnakeGraph, all: Vec<Matching>, e1: usize, e2: usize) -> Vec<Matching> {
        let mut out: Vec<Matching> = all
            .into_iter()
            .filter(|p| p.contains(&e1) || p.contains(&e2))
            .map(|p| {
                let both = p.contains(&e1) && p.contains(&e2);
                let mut m: Vec<usize> = p
                    .iter()
                    .filter(|&&e| both || (e != e1 && e != e2))
                    .map(|&e| {
                        let (tile, kind) = cut.edges[e].tiles[0];
                        self.tile_edge(tile, kind)
                    })
                    .collect();
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All perfect matchings, by a frontier transfer DP over edges in tile
    /// order with explicit reconstruction. Sorted.
    pub fn perfect_matchings_dp(&self) -> Vec<Matching> {
        let last = self.last_use();
        let mut retire: Vec<u128> = vec![0; self.edges.len()];
        for (v, &e) in last.iter().enumerate() {
            retire[e] |= 1u128 << v;
        }
        // layers[e] maps a frontier state to its node id; parents[e][node]
        // lists (node in previous layer, edge taken).
        let mut layer: HashMap<u128, usize> = HashMap::from([(0u128, 0usize)]);
        let mut parents: Vec<Vec<Vec<(usize, bool)>>> = Vec::with_capacity(self.edges.len());
        for (e, ed) in self.edges.iter().enumerate() {
            let mut next: HashMap<u128, usize> = HashMap::new();
            let mut par: Vec<Vec<(usize, bool)>> = Vec::new();
            let bits = (1u128 << ed.u) | (1u128 << ed.v);
            let mut states: Vec<(&u128, &usize)> = layer.iter().collect();
            states.sort_unstable();
            for (&state, &node) in states {
                for take in [false, true] {
                    let mut s = state;
                    if take {
                        if s & bits != 0 {
                            continue;
                        }
                        s |= bits;
                    }
                    if s & retire[e] != retire[e] {
                        continue;
                    }
                    s &= !retire[e];
                    let len = next.len();
                    let id = *next.entry(s).or_insert(len);
                    if id == par.len() {
                        par.push(Vec::new());
                    }
                    par[id].push((node, take));
                }
            }
            parents.push(par);
            layer = next;
        }
        let Some(&end) = layer.get(&0) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.collect(&parents, self.edges.len(), end, &mut stack, &mut out);
        for m in &mut out {
            m.sort_unstable();
        }
        out.sort();
        out
    }

    fn collect(
        &self,
        parents: &[Vec<Vec<(usize, bool)>>],
        e: usize,
        node: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Matching>,
    ) {
        if e == 0 {
            out.push(stack.clone());
            return;
        }
        for &(prev, took) in &parents[e - 1][node] {
            if took {
                stack.push(e - 1);
            }
            self.collect(parents, e - 1, prev, stack, out);
            if took {
                stack.pop();
            }
        }
    }

    /// All perfect matchings by enumerating every edge subset of size
    /// `|V|/2`. Exponential; intended for small graphs.
    pub fn perfect_matchings_brute(&self) -> Vec<Matching> {
        let ne = self.edges.len();
        let nv = self.num_vertices;
        if nv % 2 == 1 || ne > 63 {
            return Vec::new();
        }
        let r = nv / 2;
        let full: u128 = if nv == 128 { u128::MAX } else { (1u128 << nv) - 1 };
        let masks: Vec<u128> = self
            .edges
            .iter()
            .map(|e| (1u128 << e.u) | (1u128 << e.v))
            .collect();
        let mut out = Vec::new();
        if r > ne {
            return out;
        }
        let mut subset: u64 = if r == 0 { 0 } else { (1u64 << r) - 1 };
        let limit: u64 = 1u64 << ne;
        while subset < limit {
            let mut cover = 0u128;
            let mut ok = true;
            let mut bits = subset;
            while bits != 0 {
                let e = bits.trailing_zeros() as usize;
                if cover & masks[e] != 0 {
                    ok = false;
                    break;
                }
                cover |= masks[e];
                bits &= bits - 1;
            }
            if ok && cover == full {
                let mut m = Vec::with_capacity(r);
                let mut bits = subset;
                while bits != 0 {
                    m.push(bits.trailing_zeros() as usize);
                    bits &= bits - 1;
                }
                out.push(m);
            }
            if subset == 0 {
                break;
            }
            // Gosper's hack: next subset with the same popcount.
            let c = subset & subset.wrapping_neg();
            let rr = subset + c;
            subset = (((rr ^ subset) >> 2) / c) | rr;
        }
        out.sort();
        out
    }

    fn contains(m: &Matching, e: usize) -> bool {
        m.binary_search(&e).is_ok()
    }

    fn is_up(&self, m: &Matching, tile: usize) -> bool {
        UP.iter().all(|&k| Self::contains(m, self.tile_edge(tile, k)))
    }

    /// The unique matching in which no tile sits in the raised position.
    pub fn minimal_matching(&self, all: &[Matching]) -> Result<Matching> {
        let mut found = all
            .iter()
            .filter(|m| (0..self.tiles.len()).all(|i| !self.is_up(m, i)));
        let first = found
            .next()
            .ok_or_else(|| Error::Matching("no minimal matching".into()))?;
        if found.next().is_some() {
            return Err(Error::Matching("minimal matching is not unique".into()));
        }
        Ok(first.clone())
    }

    /// Tiles enclosed by `p` relative to `minimal`: the unique set whose
    /// boundaries sum to the symmetric difference over GF(2).
    pub fn enclosed_tiles(&self, p: &Matching, minimal: &Matching) -> Result<Vec<usize>> {
        let ne = self.edges.len();
        let mut diff = vec![false; ne];
        for &e in p.iter().chain(minimal) {
            diff[e] ^= true;
        }
        let mut chosen = Vec::new();
        let mut acc = vec![false; ne];
        for i in 0..self.tiles.len() {
            let own = EdgeKind::ALL
                .iter()
                .map(|&k| self.tile_edge(i, k))
                .find(|&e| self.edges[e].tiles.len() == 1)
                .ok_or_else(|| Error::Matching(format!("tile {} has no free side", i + 1)))?;
            if diff[own] {
                chosen.push(i);
                for k in EdgeKind::ALL {
                    acc[self.tile_edge(i, k)] ^= true;
                }
            }
        }
        if acc != diff {
            return Err(Error::Matching("symmetric difference is not a union of tiles".into()));
        }
        Ok(chosen)
    }

    /// `y(P)` in the space `(0, n)`.
    pub fn height_monomial(&self, p: &Matching, minimal: &Matching) -> Result<LaurentPoly> {
        let mut e = vec![0i32; self.n];
        for i in self.enclosed_tiles(p, minimal)? {
            e[self.tiles[i].diagonal - 1] += 1;
        }
        Ok(LaurentPoly::monomial(0, self.n, e, 1))
    }

    /// Exponent vector of `x(P)`; boundary labels contribute nothing.
    pub fn weight_exponents(&self, p: &Matching) -> Vec<i64> {
        let mut e = vec![0i64; self.n];
        for &i in p {
            let l = self.edges[i].label;
            if (1..=self.n).contains(&l) {
                e[l - 1] += 1;
            }
        }
        e
    }

    /// `x(P)` in the space `(n, ny)`.
    pub fn weight_monomial(&self, p: &Matching, ny: usize) -> LaurentPoly {
        let mut e: Vec<i32> = self.weight_exponents(p).iter().map(|&v| v as i32).collect();
        e.resize(self.n + ny, 0);
        LaurentPoly::monomial(self.n, ny, e, 1)
    }

    fn validate_matching(&self, p: &Matching) -> Result<()> {
        let mut seen = vec![false; self.num_vertices];
        for &e in p {
            let ed = self
                .edges
                .get(e)
                .ok_or_else(|| Error::Matching(format!("edge {e} does not exist")))?;
            for v in [ed.u, ed.v] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Matching("vertex covered twice".into()));
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Matching("vertex left uncovered".into()));
        }
        Ok(())
    }
}

impl fmt::Display for SnakeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.band { "band" } else { "snake" };
        writeln!(f, "{kind} graph, {} tiles", self.tiles.len())?;
        for (i, t) in self.tiles.iter().enumerate() {
            write!(
                f,
                "  tile {}: diagonal {} sides LD={} DR={} RB={} BL={}",
                i + 1,
                t.diagonal,
                t.labels[0],
                t.labels[1],
                t.labels[2],
                t.labels[3]
            )?;
            if let Some(g) = self.glue.get(i) {
                write!(f, " glued along {g}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn build_snake_graph(t: &TaggedTriangulation, arc: &Curve) -> Result<SnakeGraph> {
    if arc.is_closed() {
        return Err(Error::InvalidCurve("expected an arc".into()));
    }
    if matches!(arc.shape, Shape::InTriangulation(_)) {
        return Err(Error::InvalidCurve("arc of the triangulation has no snake graph".into()));
    }
    SnakeGraph::assemble(t.n(), tiles_of(&t.ideal, arc)?, false)
}

pub fn build_band_graph(t: &TaggedTriangulation, closed: &Curve) -> Result<SnakeGraph> {
    if !closed.is_closed() {
        return Err(Error::InvalidCurve("expected a closed curve".into()));
    }
    SnakeGraph::assemble(t.n(), tiles_of(&t.ideal, closed)?, true)
}

pub fn build_graph(t: &TaggedTriangulation, c: &Curve) -> Result<SnakeGraph> {
    if c.is_closed() {
        build_band_graph(t, c)
    } else {
        build_snake_graph(t, c)
    }
}

/// Everything read off a snake or band graph.
#[derive(Clone, Debug)]
pub struct SnakeData {
    pub graph: SnakeGraph,
    pub matchings: Vec<Matching>,
    pub minimal: Matching,
    /// `y(P)` for each matching, aligned with `matchings`.
    pub heights: Vec<LaurentPoly>,
    pub f_poly: LaurentPoly,
    pub g: Vec<i64>,
}

impl SnakeData {
    pub fn compute(t: &TaggedTriangulation, c: &Curve) -> Result<Self> {
        let graph = build_graph(t, c)?;
        let matchings = graph.enumerate_matchings();
        let minimal = graph.minimal_matching(&matchings)?;
        let heights = matchings
            .iter()
            .map(|p| graph.height_monomial(p, &minimal))
            .collect::<Result<Vec<_>>>()?;
        let mut f_poly = LaurentPoly::zero(0, t.n());
        for h in &heights {
            f_poly = f_poly.add(h)?;
        }
        let cross = c.crossing_vector(&t.ideal);
        let g = graph
            .weight_exponents(&minimal)
            .iter()
            .zip(&cross)
            .map(|(a, b)| a - b)
            .collect();
        Ok(SnakeData {
            graph,
            matchings,
            minimal,
            heights,
            f_poly,
            g,
        })
    }

    pub fn h_vector(&self, b: &ExchangeMatrix) -> Result<Vec<i64>> {
        snake_h_vector(&self.f_poly, b)
    }
}

pub fn enumerate_matchings(g: &SnakeGraph) -> Vec<Matching> {
    g.enumerate_matchings()
}

pub fn minimal_matching(g: &SnakeGraph) -> Result<Matching> {
    g.minimal_matching(&g.enumerate_matchings())
}

pub fn height_monomial(g: &SnakeGraph, p: &Matching) -> Result<LaurentPoly> {
    g.validate_matching(p)?;
    g.height_monomial(p, &minimal_matching(g)?)
}

pub fn weight_monomial(g: &SnakeGraph, p: &Matching) -> Result<LaurentPoly> {
    g.validate_matching(p)?;
    Ok(g.weight_monomial(p, 0))
}

/// `F = sum_P y(P)` in the space `(0, n)`.
pub fn snake_f_poly(g: &SnakeGraph) -> Result<LaurentPoly> {
    let all = g.enumerate_matchings();
    let minimal = g.minimal_matching(&all)?;
    all.iter().try_fold(LaurentPoly::zero(0, g.n), |acc, p| {
        acc.add(&g.height_monomial(p, &minimal)?)
    })
}

/// Degree of `x(P-)` divided by the crossing monomial. Arcs of the
/// triangulation get their unit vector.
pub fn snake_g_vector(t: &TaggedTriangulation, c: &Curve) -> Result<Vec<i64>> {
    if let Shape::InTriangulation(l) = c.shape {
        let mut g = vec![0; t.n()];
        g[l - 1] = 1;
        return Ok(g);
    }
    Ok(SnakeData::compute(t, c)?.g)
}

/// `h_i = trop(F)` at `c_j = [-b_ij]+` for `j != i` and `c_i = -1`.
pub fn snake_h_vector(f: &LaurentPoly, b: &ExchangeMatrix) -> Result<Vec<i64>> {
    let n = b.n();
    (0..n)
        .map(|i| {
            let c: Vec<i64> = (0..n)
                .map(|j| if j == i { -1 } else { (-b.get(i, j)).max(0) })
                .collect();
            f.trop_eval(&c)
        })
        .collect()
}

/// Bangle function of one laminate. With `principal`, the result lives in
/// `(n, n)` and carries `y(P)`; otherwise in `(n, 0)`.
pub fn msw_function(t: &TaggedTriangulation, c: &Curve, principal: bool) -> Result<LaurentPoly> {
    let n = t.n();
    let ny = if principal { n } else { 0 };
    if let Shape::InTriangulation(l) = c.shape {
        return match tagged_arc_variable(t, l, c.tags, n, ny) {
            Err(Error::Unsupported(_)) => notched_arc_function(t, c, principal),
            other => other,
        };
    }
    if !c.is_closed() && c.tags.contains(&Tag::Notched) {
        return notched_arc_function(t, c, principal);
    }
    let data = SnakeData::compute(t, c)?;
    let mut sum = LaurentPoly::zero(n, ny);
    for (p, h) in data.matchings.iter().zip(&data.heights) {
        let mut term = data.graph.weight_monomial(p, ny);
        if principal {
            term = term.mul(&h.embed(n, ny)?)?;
        }
        sum = sum.add(&term)?;
    }
    let mut shift: Vec<i32> = c
        .crossing_vector(&t.ideal)
        .iter()
        .map(|&v| -(v as i32))
        .collect();
    shift.resize(n + ny, 0);
    Ok(sum.shift(&shift))
}

/// Variable of an arc of `T°` carrying the given end tags, as a tagged arc.
fn tagged_arc_variable(
    t: &TaggedTriangulation,
    l: usize,
    tags: [Tag; 2],
    n: usize,
    ny: usize,
) -> Result<LaurentPoly> {
    let ideal = &t.ideal;
    let (a, b) = ideal
        .endpoints(l)
        .ok_or_else(|| Error::InvalidCurve(format!("{l} is not an arc")))?;
    let native = |v: usize| {
        if t.notched.contains(&v) {
            Tag::Notched
        } else {
            Tag::Plain
        }
    };
    if tags == [native(a), native(b)] {
        if let Some(&(_, folded, lp, _)) = ideal.self_folded().iter().find(|s| s.2 == l) {
            // The loop as a curve is the product of the folded side with its
            // notched companion.
            return LaurentPoly::x(n, ny, folded - 1).mul(&LaurentPoly::x(n, ny, lp - 1));
        }
        return Ok(LaurentPoly::x(n, ny, l - 1));
    }
    // The folded side notched at its puncture is the tagged arc of the loop.
    if let Some(&(_, _, lp, p)) = ideal.self_folded().iter().find(|s| s.1 == l) {
        let expect = [a, b].map(|v| if v == p { Tag::Notched } else { native(v) });
        if tags == expect {
            return Ok(LaurentPoly::x(n, ny, lp - 1));
        }
    }
    Err(Error::Unsupported("arc of the triangulation with foreign tags".into()))
}

/// Coefficient-free function of an arc notched at exactly one puncture end:
/// the enclosing loop divided by the plain arc.
fn notched_arc_function(t: &TaggedTriangulation, c: &Curve, principal: bool) -> Result<LaurentPoly> {
    if principal {
        return Err(Error::Unsupported("notched arcs with principal coefficients".into()));
    }
    let oriented = match (c.tags, &c.shape) {
        (_, Shape::InTriangulation(_)) if c.tags.contains(&Tag::Plain) => c.clone(),
        ([Tag::Plain, Tag::Notched], _) => c.clone(),
        ([Tag::Notched, Tag::Plain], _) => c.reversed(),
        _ => return Err(Error::Unsupported("arcs notched at both ends".into())),
    };
    if t.notched.iter().next().is_some() || !t.ideal.self_folded().is_empty() {
        return Err(Error::Unsupported("notched arcs need a plain triangulation".into()));
    }
    let lp = oriented.enclosing_loop(t)?;
    let mut plain = oriented;
    plain.tags = [Tag::Plain; 2];
    let num = msw_function(t, &lp, false)?;
    let den = msw_function(t, &plain, false)?;
    num.div_exact(&den)?
        .ok_or_else(|| Error::Unsupported("loop function not divisible by the arc".into()))
}

/// Product of bangle functions with multiplicities.
pub fn bangle_of_lamination(
    t: &TaggedTriangulation,
    laminates: &[(Curve, u32)],
    principal: bool,
) -> Result<LaurentPoly> {
    let ny = if principal { t.n() } else { 0 };
    laminates
        .iter()
        .try_fold(LaurentPoly::one(t.n(), ny), |acc, (c, m)| {
            acc.mul(&msw_function(t, c, principal)?.pow(*m))
        })
}
