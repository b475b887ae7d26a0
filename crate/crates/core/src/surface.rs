//! Combinatorial triangulated marked surfaces.
//!
//! A triangulation is a list of triangles, each a clockwise triple of side
//! labels. Labels `1..=n` are arcs and `n+1..=n+b` boundary segments. Side `s`
//! of a triangle runs from corner `s` to corner `s+1` (indices mod 3). Two
//! sides carrying the same arc are glued so that corner `s` of one meets
//! corner `s'+1` of the other.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::mutation::ExchangeMatrix;

#[inline]
pub(crate) fn m3(i: usize) -> usize {
    i % 3
}

/// Genus, marked points on each boundary component, and number of punctures.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedSurface {
    pub genus: usize,
    pub boundary: Vec<usize>,
    pub punctures: usize,
}

impl MarkedSurface {
    pub fn new(genus: usize, boundary: Vec<usize>, punctures: usize) -> Result<Self> {
        let s = MarkedSurface {
            genus,
            boundary,
            punctures,
        };
        s.validate()?;
        Ok(s)
    }

    fn validate(&self) -> Result<()> {
        if self.boundary.is_empty() {
            return Err(Error::MalformedTriangulation(
                "surfaces without boundary are not supported".into(),
            ));
        }
        if self.boundary.iter().any(|&m| m == 0) {
            return Err(Error::MalformedTriangulation(
                "every boundary component needs a marked point".into(),
            ));
        }
        if self.genus == 0 && self.boundary.len() == 1 {
            let m = self.boundary[0];
            if (self.punctures == 0 && m <= 3) || (self.punctures == 1 && m == 1) {
                return Err(Error::MalformedTriangulation(format!(
                    "degenerate disc with {m} marked points and {} punctures",
                    self.punctures
                )));
            }
        }
        Ok(())
    }

    /// Number of arcs in any ideal triangulation.
    pub fn rank(&self) -> usize {
        let m: usize = self.boundary.iter().sum();
        6 * self.genus + 3 * self.boundary.len() + 3 * self.punctures + m - 6
    }
}

/// Ideal triangulation with explicit vertex labels on triangle corners.
#[derive(Clone, Debug)]
pub struct IdealTriangulation {
    surface: MarkedSurface,
    n: usize,
    nb: usize,
    tris: Vec<[usize; 3]>,
    corners: Vec<[usize; 3]>,
    puncture: Vec<bool>,
}

/// What a flip did, in enough detail to transport curves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipRecord {
    pub arc: usize,
    /// Old triangle indices, `t1 < t2`.
    pub t1: usize,
    pub t2: usize,
    /// Position of the flipped arc in `t1` and `t2` (before and after).
    pub r1: usize,
    pub r2: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl IdealTriangulation {
    /// Build from clockwise side triples, computing vertices by gluing.
    pub fn new(surface: MarkedSurface, n: usize, nb: usize, tris: Vec<[usize; 3]>) -> Result<Self> {
        surface.validate()?;
        let mut t = IdealTriangulation {
            surface,
            n,
            nb,
            tris,
            corners: Vec::new(),
            puncture: Vec::new(),
        };
        t.check_labels()?;
        t.compute_vertices();
        t.check_topology()?;
        Ok(t)
    }

    fn check_labels(&self) -> Result<()> {
        let mut count = vec![0usize; self.n + self.nb + 1];
        for tri in &self.tris {
            for &s in tri {
                if s == 0 || s > self.n + self.nb {
                    return Err(Error::MalformedTriangulation(format!("label {s} out of range")));
                }
                count[s] += 1;
            }
            if tri[0] == tri[1] && tri[1] == tri[2] {
                return Err(Error::MalformedTriangulation("triangle with three equal sides".into()));
            }
            for p in 0..3 {
                if tri[p] == tri[m3(p + 1)] && self.is_boundary(tri[p]) {
                    return Err(Error::MalformedTriangulation(format!(
                        "boundary segment {} used twice",
                        tri[p]
                    )));
                }
            }
        }
        for (s, &c) in count.iter().enumerate().skip(1) {
            let want = if s <= self.n { 2 } else { 1 };
            if c != want {
                return Err(Error::MalformedTriangulation(format!(
                    "label {s} occurs {c} times, expected {want}"
                )));
            }
        }
        if self.tris.len() * 3 != 2 * self.n + self.nb {
            return Err(Error::MalformedTriangulation("side count mismatch".into()));
        }
        Ok(())
    }

    fn compute_vertices(&mut self) {
        let nt = self.tris.len();
        let mut uf = UnionFind((0..3 * nt).collect());
        for label in 1..=self.n {
            let sl = self.slots(label);
            let ((t, k), (u, l)) = (sl[0], sl[1]);
            uf.union(3 * t + k, 3 * u + m3(l + 1));
            uf.union(3 * t + m3(k + 1), 3 * u + l);
        }
        let mut ids = BTreeMap::new();
        let mut corners = vec![[0; 3]; nt];
        for (t, c) in corners.iter_mut().enumerate() {
            for (k, v) in c.iter_mut().enumerate() {
                let r = uf.find(3 * t + k);
                let next = ids.len();
                *v = *ids.entry(r).or_insert(next);
            }
        }
        let mut puncture = vec![true; ids.len()];
        for (t, tri) in self.tris.iter().enumerate() {
            for k in 0..3 {
                if self.is_boundary(tri[k]) {
                    puncture[corners[t][k]] = false;
                    puncture[corners[t][m3(k + 1)]] = false;
                }
            }
        }
        self.corners = corners;
        self.puncture = puncture;
    }

    fn check_topology(&self) -> Result<()> {
        let s = &self.surface;
        if self.n != s.rank() {
            return Err(Error::MalformedTriangulation(format!(
                "{} arcs, but the surface needs {}",
                self.n,
                s.rank()
            )));
        }
        let v = self.puncture.len() as i64;
        let e = (self.n + self.nb) as i64;
        let f = self.tris.len() as i64;
        let chi = 2 - 2 * s.genus as i64 - s.boundary.len() as i64;
        if v - e + f != chi {
            return Err(Error::MalformedTriangulation(format!(
                "Euler characteristic {} differs from {chi}",
                v - e + f
            )));
        }
        let np = self.puncture.iter().filter(|&&p| p).count();
        if np != s.punctures {
            return Err(Error::MalformedTriangulation(format!(
                "{np} punctures found, {} declared",
                s.punctures
            )));
        }
        // Boundary components: chains of boundary segments through marked points.
        let nv = self.puncture.len();
        let mut uf = UnionFind((0..nv).collect());
        for (t, tri) in self.tris.iter().enumerate() {
            for k in 0..3 {
                if self.is_boundary(tri[k]) {
                    uf.union(self.corners[t][k], self.corners[t][m3(k + 1)]);
                }
            }
        }
        let mut comps: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..nv {
            if !self.puncture[v] {
                *comps.entry(uf.find(v)).or_default() += 1;
            }
        }
        let mut found: Vec<usize> = comps.into_values().collect();
        let mut want = s.boundary.clone();
        found.sort_unstable();
        want.sort_unstable();
        if found != want {
            return Err(Error::MalformedTriangulation(format!(
                "boundary marked points {found:?}, declared {want:?}"
            )));
        }
        Ok(())
    }

    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nb(&self) -> usize {
        self.nb
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.tris
    }

    pub fn corners(&self) -> &[[usize; 3]] {
        &self.corners
    }

    pub fn num_vertices(&self) -> usize {
        self.puncture.len()
    }

    pub fn is_puncture(&self, v: usize) -> bool {
        self.puncture[v]
    }

    pub fn punctures(&self) -> Vec<usize> {
        (0..self.puncture.len()).filter(|&v| self.puncture[v]).collect()
    }

    pub fn is_arc(&self, label: usize) -> bool {
        (1..=self.n).contains(&label)
    }

    pub fn is_boundary(&self, label: usize) -> bool {
        label > self.n && label <= self.n + self.nb
    }

    /// The side slots `(triangle, position)` carrying `label`, in scan order.
    pub fn slots(&self, label: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(2);
        for (t, tri) in self.tris.iter().enumerate() {
            for (k, &s) in tri.iter().enumerate() {
                if s == label {
                    out.push((t, k));
                }
            }
        }
        out
    }

    /// The slot glued to `(t, k)`, if the side is an arc.
    pub fn partner(&self, t: usize, k: usize) -> Option<(usize, usize)> {
        let label = self.tris[t][k];
        if !self.is_arc(label) {
            return None;
        }
        self.slots(label).into_iter().find(|&s| s != (t, k))
    }

    /// Endpoints of an arc or boundary segment (vertex ids), in the direction
    /// of its first slot.
    pub fn endpoints(&self, label: usize) -> Option<(usize, usize)> {
        let (t, k) = *self.slots(label).first()?;
        Some((self.corners[t][k], self.corners[t][m3(k + 1)]))
    }

    /// Self-folded triangle data `(triangle, folded side, loop, puncture)`.
    pub fn self_folded(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for (t, tri) in self.tris.iter().enumerate() {
            for p in 0..3 {
                let q = m3(p + 1);
                if tri[p] == tri[q] {
                    out.push((t, tri[p], tri[m3(q + 1)], self.corners[t][q]));
                }
            }
        }
        out
    }

    pub fn is_self_folded(&self, t: usize) -> bool {
        let tri = self.tris[t];
        tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0]
    }

    /// `pi[i-1]` is the loop enclosing folded side `i`, else `i`.
    pub fn pi_map(&self) -> Vec<usize> {
        let mut pi: Vec<usize> = (1..=self.n).collect();
        for (_, folded, lp, _) in self.self_folded() {
            pi[folded - 1] = lp;
        }
        pi
    }

    /// Vertex degree counted in arc and boundary ends.
    pub fn degree(&self, v: usize) -> usize {
        self.corners.iter().flatten().filter(|&&c| c == v).count()
    }

    pub fn adjacency_matrix(&self) -> ExchangeMatrix {
        let n = self.n;
        let pi = self.pi_map();
        let mut b = ExchangeMatrix::zero(n);
        for (t, tri) in self.tris.iter().enumerate() {
            if self.is_self_folded(t) {
                continue;
            }
            for p in 0..3 {
                let (s, s2) = (tri[p], tri[m3(p + 1)]);
                if !self.is_arc(s) || !self.is_arc(s2) {
                    continue;
                }
                for j in (1..=n).filter(|&j| pi[j - 1] == s) {
                    for k in (1..=n).filter(|&k| pi[k - 1] == s2) {
                        b.add_to(j - 1, k - 1, 1);
                        b.add_to(k - 1, j - 1, -1);
                    }
                }
            }
        }
        b
    }

    fn rotate(&mut self, t: usize, r: usize) {
        let (tri, cor) = (self.tris[t], self.corners[t]);
        for i in 0..3 {
            self.tris[t][m3(i + r)] = tri[i];
            self.corners[t][m3(i + r)] = cor[i];
        }
    }

    /// Quadrilateral re-diagonalization of arc `k`, which must not be a
    /// folded side.
    pub fn flip(&self, k: usize) -> Result<(IdealTriangulation, FlipRecord)> {
        if !self.is_arc(k) {
            return Err(Error::IndexOutOfRange {
                index: k,
                size: self.n,
            });
        }
        let sl = self.slots(k);
        let ((t1, r1), (t2, r2)) = (sl[0], sl[1]);
        if t1 == t2 {
            return Err(Error::UnsupportedFlip(format!(
                "arc {k} is the folded side of a self-folded triangle"
            )));
        }
        let mut out = self.clone();
        out.rotate(t1, 3 - r1);
        out.rotate(t2, 3 - r2);
        let [_, a, b] = out.tris[t1];
        let [_, c, d] = out.tris[t2];
        let [p0, _, p2] = out.corners[t1];
        let [_, _, q2] = out.corners[t2];
        out.tris[t1] = [k, d, a];
        out.corners[t1] = [p2, q2, self.corners[t1][m3(r1 + 1)]];
        out.tris[t2] = [k, b, c];
        out.corners[t2] = [q2, p2, p0];
        out.rotate(t1, r1);
        out.rotate(t2, r2);
        Ok((
            out,
            FlipRecord {
                arc: k,
                t1,
                t2,
                r1,
                r2,
            },
        ))
    }

    /// Swap two arc labels everywhere.
    pub fn swap_labels(&self, i: usize, j: usize) -> IdealTriangulation {
        let mut out = self.clone();
        for tri in &mut out.tris {
            for s in tri.iter_mut() {
                if *s == i {
                    *s = j;
                } else if *s == j {
                    *s = i;
                }
            }
        }
        out
    }

    /// Canonical form for comparisons: each triangle rotated to its least
    /// rotation, then the list sorted.
    pub fn canonical(&self) -> Vec<([usize; 3], [usize; 3])> {
        let mut v: Vec<_> = (0..self.tris.len())
            .map(|t| {
                (0..3)
                    .map(|r| {
                        let tri = [0, 1, 2].map(|i| self.tris[t][m3(i + r)]);
                        let cor = [0, 1, 2].map(|i| self.corners[t][m3(i + r)]);
                        (tri, cor)
                    })
                    .min()
                    .expect("three rotations")
            })
            .collect();
        v.sort_unstable();
        v
    }
}

impl IdealTriangulation {
    /// For two equal triangulations, send triangle `t` of `self` to
    /// `(t', r)` where position `p` of `t` is position `p + r` of `t'`.
    pub fn triangle_map(&self, other: &IdealTriangulation) -> Option<Vec<(usize, usize)>> {
        if self != other {
            return None;
        }
        let mut used = vec![false; other.tris.len()];
        let mut out = Vec::with_capacity(self.tris.len());
        for t in 0..self.tris.len() {
            let hit = (0..other.tris.len())
                .flat_map(|u| (0..3).map(move |r| (u, r)))
                .find(|&(u, r)| {
                    !used[u]
                        && (0..3).all(|p| {
                            other.tris[u][m3(p + r)] == self.tris[t][p]
                                && other.corners[u][m3(p + r)] == self.corners[t][p]
                        })
                })?;
            used[hit.0] = true;
            out.push(hit);
        }
        Some(out)
    }
}

impl PartialEq for IdealTriangulation {
    fn eq(&self, other: &Self) -> bool {
        self.surface == other.surface
            && self.n == other.n
            && self.nb == other.nb
            && self.canonical() == other.canonical()
    }
}

impl Eq for IdealTriangulation {}

/// Tagged triangulation stored as an ideal representative together with the
/// set of punctures at which every tag is notched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedTriangulation {
    pub ideal: IdealTriangulation,
    pub notched: BTreeSet<usize>,
}

impl TaggedTriangulation {
    pub fn new(ideal: IdealTriangulation, notched: BTreeSet<usize>) -> Result<Self> {
        for &p in &notched {
            if p >= ideal.num_vertices() || !ideal.is_puncture(p) {
                return Err(Error::MalformedTriangulation(format!(
                    "vertex {} is not a puncture",
                    p + 1
                )));
            }
        }
        Ok(TaggedTriangulation { ideal, notched }.normalized())
    }

    pub fn plain(ideal: IdealTriangulation) -> Self {
        TaggedTriangulation {
            ideal,
            notched: BTreeSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.ideal.n
    }

    /// A notched puncture inside a self-folded triangle is re-expressed with
    /// plain tags by exchanging the folded side and the loop.
    fn normalized(self) -> Self {
        self.normalized_with_swaps().0
    }

    fn normalized_with_swaps(mut self) -> (Self, Vec<(usize, usize)>) {
        let mut swaps = Vec::new();
        loop {
            let hit = self
                .ideal
                .self_folded()
                .into_iter()
                .find(|&(_, _, _, p)| self.notched.contains(&p));
            match hit {
                Some((_, f, l, p)) => {
                    self.ideal = self.ideal.swap_labels(f, l);
                    self.notched.remove(&p);
                    swaps.push((f, l));
                }
                None => return (self, swaps),
            }
        }
    }

    /// Puncture vertex id mapped to its signature in `{-1, 0, 1}`.
    pub fn signature(&self) -> BTreeMap<usize, i8> {
        let folded: BTreeSet<usize> = self.ideal.self_folded().iter().map(|s| s.3).collect();
        self.ideal
            .punctures()
            .into_iter()
            .map(|p| {
                let s = if self.notched.contains(&p) {
                    -1
                } else if folded.contains(&p) {
                    0
                } else {
                    1
                };
                (p, s)
            })
            .collect()
    }

    pub fn adjacency_matrix(&self) -> ExchangeMatrix {
        self.ideal.adjacency_matrix()
    }

    /// Tagged flip. Folded sides are handled by switching tags at their
    /// puncture, which turns them into loops.
    pub fn flip(&self, k: usize) -> Result<(TaggedTriangulation, FlipStep)> {
        let folded = self
            .ideal
            .self_folded()
            .into_iter()
            .find(|&(_, f, _, _)| f == k);
        let (base, before) = match folded {
            Some((_, f, l, p)) => {
                let mut notched = self.notched.clone();
                if !notched.insert(p) {
                    notched.remove(&p);
                }
                (
                    TaggedTriangulation {
                        ideal: self.ideal.swap_labels(f, l),
                        notched,
                    },
                    vec![(f, l)],
                )
            }
            None => (self.clone(), Vec::new()),
        };
        let (ideal, record) = base.ideal.flip(k)?;
        let (normalized, after) = TaggedTriangulation {
            ideal,
            notched: base.notched,
        }
        .normalized_with_swaps();
        Ok((
            normalized,
            FlipStep {
                record,
                swaps_before: before,
                swaps_after: after,
            },
        ))
    }

    /// Parse the line-oriented triangulation format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut surface = None;
        let mut n = None;
        let mut nb = None;
        let mut tris = Vec::new();
        let mut declared_folded = Vec::new();
        let mut tags: Vec<(usize, usize, bool, usize)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let head = words.next().expect("nonempty");
            let rest: Vec<&str> = words.collect();
            match head {
                "surface" => {
                    let kv = key_values(&rest, line_no)?;
                    let g = get_usize(&kv, "g", line_no)?;
                    let b = get_usize(&kv, "b", line_no)?;
                    let p = get_usize(&kv, "p", line_no)?;
                    let m: Vec<usize> = match kv.get("m") {
                        Some(s) if !s.is_empty() => s
                            .split(',')
                            .map(|x| x.parse().map_err(|_| parse_err(line_no, "bad m list")))
                            .collect::<Result<_>>()?,
                        _ => Vec::new(),
                    };
                    if m.len() != b {
                        return Err(parse_err(line_no, "m list length differs from b"));
                    }
                    surface = Some(MarkedSurface::new(g, m, p)?);
                }
                "arcs" => n = Some(single_usize(&rest, line_no)?),
                "boundary" => nb = Some(single_usize(&rest, line_no)?),
                "triangle" => {
                    if rest.len() < 3 {
                        return Err(parse_err(line_no, "triangle needs three sides"));
                    }
                    let mut tri = [0; 3];
                    for (k, w) in rest[..3].iter().enumerate() {
                        tri[k] = w
                            .parse()
                            .map_err(|_| parse_err(line_no, format!("bad label `{w}`")))?;
                    }
                    for extra in &rest[3..] {
                        match extra.split_once('=') {
                            Some(("selffolded", v)) => {
                                let f: usize =
                                    v.parse().map_err(|_| parse_err(line_no, "bad selffolded"))?;
                                declared_folded.push((tris.len(), f, line_no));
                            }
                            _ => return Err(parse_err(line_no, format!("unknown `{extra}`"))),
                        }
                    }
                    tris.push(tri);
                }
                "tag" => {
                    if rest.len() != 3 {
                        return Err(parse_err(line_no, "tag <arc> <end> <plain|notched>"));
                    }
                    let arc: usize = rest[0].parse().map_err(|_| parse_err(line_no, "bad arc"))?;
                    let end: usize = rest[1].parse().map_err(|_| parse_err(line_no, "bad end"))?;
                    if end > 1 {
                        return Err(parse_err(line_no, "end must be 0 or 1"));
                    }
                    let notched = match rest[2] {
                        "plain" => false,
                        "notched" => true,
                        other => return Err(parse_err(line_no, format!("bad tag `{other}`"))),
                    };
                    tags.push((arc, end, notched, line_no));
                }
                other => return Err(parse_err(line_no, format!("unknown directive `{other}`"))),
            }
        }
        let surface = surface.ok_or_else(|| parse_err(0, "missing surface line"))?;
        let n = n.ok_or_else(|| parse_err(0, "missing arcs line"))?;
        let nb = nb.ok_or_else(|| parse_err(0, "missing boundary line"))?;
        let ideal = IdealTriangulation::new(surface, n, nb, tris)?;
        for (t, f, line_no) in declared_folded {
            let ok = ideal
                .self_folded()
                .iter()
                .any(|&(st, sf, _, _)| st == t && sf == f);
            if !ok {
                return Err(parse_err(line_no, format!("side {f} is not folded here")));
            }
        }
        // Notched ends must cover whole punctures.
        let mut notched_ends: BTreeMap<usize, usize> = BTreeMap::new();
        for &(arc, end, notched, line_no) in &tags {
            let (a, b) = ideal
                .endpoints(arc)
                .filter(|_| ideal.is_arc(arc))
                .ok_or_else(|| parse_err(line_no, format!("tag on non-arc {arc}")))?;
            let v = if end == 0 { a } else { b };
            if notched {
                if !ideal.is_puncture(v) {
                    return Err(parse_err(line_no, "boundary ends are always plain"));
                }
                *notched_ends.entry(v).or_default() += 1;
            }
        }
        let mut notched = BTreeSet::new();
        for (v, count) in notched_ends {
            // TODO: accept mixed tags at a puncture once flips can produce the
            // digon configuration (plain and notched copies of one arc).
            if count != ideal.degree(v) {
                return Err(Error::Unsupported(format!(
                    "mixed tags at puncture {}; give every end there the same tag",
                    v + 1
                )));
            }
            notched.insert(v);
        }
        TaggedTriangulation::new(ideal, notched)
    }
}

/// Bookkeeping for one tagged flip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipStep {
    pub record: FlipRecord,
    /// Label exchanges (folded side with loop) applied before the ideal flip.
    pub swaps_before: Vec<(usize, usize)>,
    /// Label exchanges applied afterwards to restore normal form.
    pub swaps_after: Vec<(usize, usize)>,
}

fn key_values<'a>(words: &[&'a str], line: usize) -> Result<BTreeMap<&'a str, &'a str>> {
    words
        .iter()
        .map(|w| {
            w.split_once('=')
                .ok_or_else(|| parse_err(line, format!("expected key=value, got `{w}`")))
        })
        .collect()
}

fn get_usize(kv: &BTreeMap<&str, &str>, key: &str, line: usize) -> Result<usize> {
    kv.get(key)
        .ok_or_else(|| parse_err(line, format!("missing {key}=")))?
        .parse()
        .map_err(|_| parse_err(line, format!("bad {key}=")))
}

fn single_usize(rest: &[&str], line: usize) -> Result<usize> {
    match rest {
        [w] => w.parse().map_err(|_| parse_err(line, format!("bad count `{w}`"))),
        _ => Err(parse_err(line, "expected one integer")),
    }
}

impl fmt::Display for TaggedTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = &self.ideal;
        let s = &t.surface;
        let m: Vec<String> = s.boundary.iter().map(|m| m.to_string()).collect();
        writeln!(
            f,
            "surface g={} b={} m={} p={}",
            s.genus,
            s.boundary.len(),
            m.join(","),
            s.punctures
        )?;
        writeln!(f, "arcs {}", t.n)?;
        writeln!(f, "boundary {}", t.nb)?;
        let folded = t.self_folded();
        for (i, tri) in t.tris.iter().enumerate() {
            write!(f, "triangle {} {} {}", tri[0], tri[1], tri[2])?;
            if let Some(sf) = folded.iter().find(|s| s.0 == i) {
                write!(f, " selffolded={}", sf.1)?;
            }
            writeln!(f)?;
        }
        for arc in 1..=t.n {
            let (a, b) = t.endpoints(arc).expect("arc has slots");
            for (end, v) in [(0, a), (1, b)] {
                if self.notched.contains(&v) {
                    writeln!(f, "tag {arc} {end} notched")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const ANNULUS: &str = "surface g=0 b=2 m=1,1 p=0\narcs 2\nboundary 2\ntriangle 2 1 3\ntriangle 2 1 4\n";
    const PENTAGON: &str = "surface g=0 b=1 m=5 p=0\narcs 2\nboundary 5\ntriangle 1 4 3\ntriangle 2 5 1\ntriangle 7 6 2\n";
    const PUNCTURED_SQUARE: &str = "surface g=0 b=1 m=4 p=1\narcs 4\nboundary 4\ntriangle 1 2 5\ntriangle 2 3 6\ntriangle 3 4 7\ntriangle 4 1 8\n";

    fn tt(s: &str) -> TaggedTriangulation {
        TaggedTriangulation::parse(s).unwrap()
    }

    #[test]
    fn annulus_matrix_and_flip() {
        let t = tt(ANNULUS);
        assert_eq!(t.adjacency_matrix().rows(), vec![vec![0, -2], vec![2, 0]]);
        let (t2, _) = t.flip(1).unwrap();
        assert_eq!(t2.adjacency_matrix().rows(), vec![vec![0, 2], vec![-2, 0]]);
        let (back, _) = t2.flip(1).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn pentagon_is_a2() {
        let t = tt(PENTAGON);
        let b = t.adjacency_matrix();
        assert_eq!(b.get(0, 1).abs(), 1);
        assert!(b.is_skew_symmetric());
        for k in 1..=2 {
            let (f, _) = t.flip(k).unwrap();
            assert_eq!(f.adjacency_matrix(), b.mutate(k - 1).unwrap());
            assert_eq!(f.flip(k).unwrap().0, t);
        }
    }

    #[test]
    fn pi_and_signature() {
        let t = tt(PUNCTURED_SQUARE);
        assert_eq!(t.ideal.pi_map(), vec![1, 2, 3, 4]);
        assert_eq!(t.signature().into_values().collect::<Vec<_>>(), vec![1]);
        assert!(tt(PENTAGON).signature().is_empty());
    }

    #[test]
    fn self_folded_appears_and_resolves() {
        let t = tt(PUNCTURED_SQUARE);
        // Flipping spokes 1 then 2 leaves the puncture with degree one.
        let (t1, _) = t.flip(1).unwrap();
        let (t2, _) = t1.flip(2).unwrap();
        let (t3, _) = t2.flip(3).unwrap();
        let sf = t3.ideal.self_folded();
        assert_eq!(sf.len(), 1);
        let (_, folded, lp, _) = sf[0];
        let pi = t3.ideal.pi_map();
        assert_eq!(pi[folded - 1], lp);
        assert!(pi.iter().all(|&j| pi[j - 1] == j));
        assert_eq!(t3.signature().into_values().collect::<Vec<_>>(), vec![0]);
        let b = t3.adjacency_matrix();
        for k in 1..=4 {
            let (f, _) = t3.flip(k).unwrap();
            assert_eq!(f.adjacency_matrix(), b.mutate(k - 1).unwrap(), "k={k}");
            assert_eq!(f.flip(k).unwrap().0, t3, "k={k}");
        }
    }

    #[test]
    fn notched_puncture_round_trips() {
        let plain = tt(PUNCTURED_SQUARE);
        let p = plain.ideal.punctures()[0];
        let mut text = PUNCTURED_SQUARE.to_string();
        for arc in 1..=4 {
            let (a, _) = plain.ideal.endpoints(arc).unwrap();
            let end = usize::from(a != p);
            text.push_str(&format!("tag {arc} {end} notched\n"));
        }
        let t = tt(&text);
        assert_eq!(t.signature().into_values().collect::<Vec<_>>(), vec![-1]);
        assert_eq!(tt(&t.to_string()), t);
    }

    #[test]
    fn malformed_inputs() {
        let bad = ANNULUS.replace("triangle 2 1 4", "triangle 2 2 4");
        assert!(TaggedTriangulation::parse(&bad).is_err());
        let bad = ANNULUS.replace("m=1,1", "m=2,1");
        assert!(TaggedTriangulation::parse(&bad).is_err());
        assert!(TaggedTriangulation::parse("arcs 1").is_err());
        assert!(MarkedSurface::new(0, vec![3], 0).is_err());
        assert!(MarkedSurface::new(0, vec![1], 1).is_err());
    }
}
