//! Curves on a triangulated surface, recorded as the segments they trace
//! inside each triangle.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::poly::LaurentPoly;
use crate::surface::{m3, FlipRecord, IdealTriangulation, TaggedTriangulation};

/// Where a segment enters or leaves a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Port {
    /// Through side `k` (an arc crossing, or the end of a laminate on a
    /// boundary segment).
    Slot(usize),
    /// At the vertex in corner `c`.
    Corner(usize),
    /// A truncated spiral; the curve continues but is no longer tracked.
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub tri: usize,
    pub from: Port,
    pub to: Port,
}

impl Segment {
    pub fn reversed(&self) -> Segment {
        Segment {
            tri: self.tri,
            from: self.to,
            to: self.from,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Tag {
    #[default]
    Plain,
    Notched,
}

impl Tag {
    pub fn switched(self) -> Tag {
        match self {
            Tag::Plain => Tag::Notched,
            Tag::Notched => Tag::Plain,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// Cyclic list of segments, every port a slot.
    Closed(Vec<Segment>),
    /// Segments from one end to the other.
    Path(Vec<Segment>),
    /// An arc of the triangulation itself.
    InTriangulation(usize),
}

/// A curve together with the tags at its two ends (ignored for closed curves).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    pub shape: Shape,
    pub tags: [Tag; 2],
}

impl Curve {
    pub fn closed(segs: Vec<Segment>) -> Self {
        Curve {
            shape: Shape::Closed(segs),
            tags: [Tag::Plain; 2],
        }
    }

    pub fn path(segs: Vec<Segment>, tags: [Tag; 2]) -> Self {
        Curve {
            shape: Shape::Path(segs),
            tags,
        }
    }

    pub fn arc_in_triangulation(label: usize, tags: [Tag; 2]) -> Self {
        Curve {
            shape: Shape::InTriangulation(label),
            tags,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.shape, Shape::Closed(_))
    }

    pub fn segments(&self) -> &[Segment] {
        match &self.shape {
            Shape::Closed(s) | Shape::Path(s) => s,
            Shape::InTriangulation(_) => &[],
        }
    }

    /// Crossings as `(triangle, exit slot)` pairs, in order.
    pub fn crossings(&self) -> Vec<(usize, usize)> {
        let segs = self.segments();
        let take = match self.shape {
            Shape::Closed(_) => segs.len(),
            _ => segs.len().saturating_sub(1),
        };
        segs.iter()
            .take(take)
            .map(|s| match s.to {
                Port::Slot(k) => (s.tri, k),
                _ => unreachable!("interior segment ends in a slot"),
            })
            .collect()
    }

    /// Labels of the crossed arcs, in order.
    pub fn crossing_labels(&self, t: &IdealTriangulation) -> Vec<usize> {
        self.crossings()
            .into_iter()
            .map(|(tri, k)| t.triangles()[tri][k])
            .collect()
    }

    /// Number of crossings with each arc, indexed by label minus one.
    pub fn crossing_vector(&self, t: &IdealTriangulation) -> Vec<i64> {
        let mut v = vec![0i64; t.n()];
        for l in self.crossing_labels(t) {
            v[l - 1] += 1;
        }
        v
    }

    /// Same curve traversed backwards.
    pub fn reversed(&self) -> Curve {
        let shape = match &self.shape {
            Shape::Closed(s) => Shape::Closed(s.iter().rev().map(Segment::reversed).collect()),
            Shape::Path(s) => Shape::Path(s.iter().rev().map(Segment::reversed).collect()),
            Shape::InTriangulation(_) => {
                // tags follow the orientation of the arc's first slot
                return self.clone();
            }
        };
        Curve {
            shape,
            tags: [self.tags[1], self.tags[0]],
        }
    }

    /// Vertex ids at the two ends, for arcs that end at marked points.
    pub fn endpoints(&self, t: &IdealTriangulation) -> Option<(usize, usize)> {
        match &self.shape {
            Shape::Closed(_) => None,
            Shape::InTriangulation(l) => t.endpoints(*l),
            Shape::Path(segs) => {
                let (first, last) = (segs.first()?, segs.last()?);
                match (first.from, last.to) {
                    (Port::Corner(a), Port::Corner(b)) => {
                        Some((t.corners()[first.tri][a], t.corners()[last.tri][b]))
                    }
                    _ => None,
                }
            }
        }
    }

    /// For an arc whose last end is at a puncture, the loop based at the
    /// first end that runs along the arc and goes once around the puncture.
    pub fn enclosing_loop(&self, tt: &TaggedTriangulation) -> Result<Curve> {
        let t = &tt.ideal;
        let segs = match &self.shape {
            Shape::Path(segs) => segs,
            Shape::InTriangulation(l) => return self.loop_around_side(tt, *l),
            Shape::Closed(_) => return Err(Error::InvalidCurve("closed curves have no ends".into())),
        };
        let last = segs[segs.len() - 1];
        let (Port::Slot(j), Port::Corner(cp)) = (last.from, last.to) else {
            return Err(Error::InvalidCurve("arc must end at a marked point".into()));
        };
        if !t.is_puncture(t.corners()[last.tri][cp]) {
            return Err(Error::InvalidCurve("arc does not end at a puncture".into()));
        }
        let mut out: Vec<Segment> = segs[..segs.len() - 1].to_vec();
        out.push(Segment {
            tri: last.tri,
            from: Port::Slot(j),
            to: Port::Slot(cp),
        });
        let (mut tri, mut side) = (last.tri, cp);
        for _ in 0..3 * t.triangles().len() {
            let (t2, j2) = t
                .partner(tri, side)
                .ok_or_else(|| Error::InvalidCurve("puncture on the boundary".into()))?;
            if t2 == last.tri && j2 == m3(cp + 2) {
                out.push(Segment {
                    tri: t2,
                    from: Port::Slot(j2),
                    to: Port::Slot(j),
                });
                out.extend(segs[..segs.len() - 1].iter().rev().map(Segment::reversed));
                return Curve::path(out, [self.tags[0]; 2]).validate(tt);
            }
            out.push(Segment {
                tri: t2,
                from: Port::Slot(j2),
                to: Port::Slot(m3(j2 + 1)),
            });
            tri = t2;
            side = m3(j2 + 1);
        }
        Err(Error::InvalidCurve("walk around the puncture did not close".into()))
    }

    /// Enclosing loop of an arc of `T°`, around its notched end (or its
    /// second end when neither is notched).
    fn loop_around_side(&self, tt: &TaggedTriangulation, l: usize) -> Result<Curve> {
        let t = &tt.ideal;
        let slots = t.slots(l);
        let pick = if self.tags[0] == Tag::Notched && self.tags[1] == Tag::Plain {
            1
        } else {
            0
        };
        let &(t0, s) = slots
            .get(pick)
            .ok_or_else(|| Error::InvalidCurve(format!("{l} is not an arc")))?;
        let (t1, s1) = t
            .partner(t0, s)
            .ok_or_else(|| Error::InvalidCurve(format!("{l} is not an arc")))?;
        if !t.is_puncture(t.corners()[t0][m3(s + 1)]) {
            return Err(Error::InvalidCurve("arc does not end at a puncture".into()));
        }
        let mut out = vec![Segment {
            tri: t0,
            from: Port::Corner(s),
            to: Port::Slot(m3(s + 1)),
        }];
        let (mut tri, mut side) = (t0, m3(s + 1));
        for _ in 0..3 * t.triangles().len() {
            let (t2, j2) = t
                .partner(tri, side)
                .ok_or_else(|| Error::InvalidCurve("puncture on the boundary".into()))?;
            if t2 == t1 && j2 == m3(s1 + 2) {
                out.push(Segment {
                    tri: t1,
                    from: Port::Slot(j2),
                    to: Port::Corner(m3(s1 + 1)),
                });
                let tag = if pick == 1 { self.tags[1] } else { self.tags[0] };
                return Curve::path(out, [tag; 2]).validate(tt);
            }
            out.push(Segment {
                tri: t2,
                from: Port::Slot(j2),
                to: Port::Slot(m3(j2 + 1)),
            });
            tri = t2;
            side = m3(j2 + 1);
        }
        Err(Error::InvalidCurve("walk around the puncture did not close".into()))
    }

    /// The same curve described on an equal triangulation whose triangles
    /// are stored in a different order or rotation.
    pub fn reindexed(&self, from: &TaggedTriangulation, to: &TaggedTriangulation) -> Result<Curve> {
        let map = from
            .ideal
            .triangle_map(&to.ideal)
            .ok_or_else(|| Error::InvalidCurve("triangulations differ".into()))?;
        let port = |p: Port, r: usize| match p {
            Port::Slot(k) => Port::Slot(m3(k + r)),
            Port::Corner(c) => Port::Corner(m3(c + r)),
            Port::Open => Port::Open,
        };
        let move_segs = |segs: &[Segment]| -> Vec<Segment> {
            segs.iter()
                .map(|s| {
                    let (tri, r) = map[s.tri];
                    Segment {
                        tri,
                        from: port(s.from, r),
                        to: port(s.to, r),
                    }
                })
                .collect()
        };
        let shape = match &self.shape {
            Shape::Closed(s) => Shape::Closed(move_segs(s)),
            Shape::Path(s) => Shape::Path(move_segs(s)),
            Shape::InTriangulation(l) => Shape::InTriangulation(*l),
        };
        let mut c = Curve {
            shape,
            tags: self.tags,
        };
        if let (Shape::InTriangulation(_), Some((a, b)), Some((na, nb))) =
            (&c.shape, self.endpoints(&from.ideal), c.endpoints(&to.ideal))
        {
            if a != b && (na, nb) == (b, a) {
                c.tags.swap(0, 1);
            }
        }
        c.validate(to)
    }

    /// Check adjacency and the absence of backtracking, and normalize closed
    /// curves to their least rotation.
    pub fn validate(self, tt: &TaggedTriangulation) -> Result<Curve> {
        let t = &tt.ideal;
        let nt = t.triangles().len();
        let bad = |m: String| Err(Error::InvalidCurve(m));
        match &self.shape {
            Shape::InTriangulation(l) => {
                if !t.is_arc(*l) {
                    return bad(format!("{l} is not an arc"));
                }
            }
            Shape::Closed(segs) | Shape::Path(segs) => {
                let closed = self.is_closed();
                if segs.is_empty() {
                    return bad("empty curve".into());
                }
                if closed && segs.len() < 2 {
                    return bad("closed curves cross at least two arcs".into());
                }
                for (i, s) in segs.iter().enumerate() {
                    if s.tri >= nt {
                        return bad(format!("triangle {} does not exist", s.tri + 1));
                    }
                    for p in [s.from, s.to] {
                        match p {
                            Port::Slot(k) | Port::Corner(k) if k > 2 => {
                                return bad(format!("position {k} out of range"))
                            }
                            Port::Corner(_) if closed => {
                                return bad("closed curves never meet a vertex".into())
                            }
                            _ => {}
                        }
                    }
                    if s.from == s.to && s.from != Port::Open {
                        return bad(format!("segment {} backtracks", i + 1));
                    }
                    let interior_end = closed || i + 1 < segs.len();
                    if interior_end {
                        let next = &segs[(i + 1) % segs.len()];
                        let Port::Slot(k) = s.to else {
                            return bad(format!("segment {} does not end in a side", i + 1));
                        };
                        let Some((u, l)) = t.partner(s.tri, k) else {
                            return bad(format!("segment {} leaves through the boundary", i + 1));
                        };
                        if next.tri != u || next.from != Port::Slot(l) {
                            return bad(format!(
                                "segment {} does not continue across arc {}",
                                i + 1,
                                t.triangles()[s.tri][k]
                            ));
                        }
                    }
                }
                if !closed {
                    let (first, last) = (&segs[0], &segs[segs.len() - 1]);
                    for (tri, p) in [(first.tri, first.from), (last.tri, last.to)] {
                        if let Port::Slot(k) = p {
                            if !t.is_boundary(t.triangles()[tri][k]) {
                                return bad("a path may only stop on a boundary side".into());
                            }
                        }
                    }
                }
            }
        }
        if let Some((a, b)) = self.endpoints(t) {
            for (v, tag) in [(a, self.tags[0]), (b, self.tags[1])] {
                if tag == Tag::Notched && !t.is_puncture(v) {
                    return bad("notched tag at a boundary marked point".into());
                }
            }
        }
        Ok(self.normalized())
    }

    /// Least rotation for closed curves; other curves unchanged.
    pub fn normalized(self) -> Curve {
        match self.shape {
            Shape::Closed(segs) => {
                let n = segs.len();
                let best = (0..n)
                    .min_by(|&a, &b| {
                        let ra = segs[a..].iter().chain(&segs[..a]);
                        let rb = segs[b..].iter().chain(&segs[..b]);
                        ra.cmp(rb)
                    })
                    .unwrap_or(0);
                let mut s = segs;
                s.rotate_left(best);
                Curve {
                    shape: Shape::Closed(s),
                    tags: [Tag::Plain; 2],
                }
            }
            _ => self,
        }
    }

    /// `prod x_arc` over crossings, in the variable space `(n, ny)`.
    pub fn crossing_monomial(&self, t: &IdealTriangulation, ny: usize) -> LaurentPoly {
        let n = t.n();
        let mut e: Vec<i32> = self.crossing_vector(t).into_iter().map(|c| c as i32).collect();
        e.resize(n + ny, 0);
        LaurentPoly::monomial(n, ny, e, 1)
    }

    /// Build an arc or closed curve from `(triangle, exit slot)` crossings.
    pub fn from_crossings(
        t: &IdealTriangulation,
        closed: bool,
        crossings: &[(usize, usize)],
        tags: [Tag; 2],
    ) -> Result<Curve> {
        if crossings.is_empty() {
            return Err(Error::InvalidCurve("no crossings given".into()));
        }
        let nt = t.triangles().len();
        let mut entries = Vec::with_capacity(crossings.len());
        for (i, &(tri, k)) in crossings.iter().enumerate() {
            if tri >= nt || k > 2 {
                return Err(Error::InvalidCurve(format!("crossing {} out of range", i + 1)));
            }
            let (u, l) = t.partner(tri, k).ok_or_else(|| {
                Error::InvalidCurve(format!("crossing {} is not through an arc", i + 1))
            })?;
            entries.push((u, l));
        }
        let d = crossings.len();
        let mut segs = Vec::with_capacity(d + 1);
        for (i, &(tri, k)) in crossings.iter().enumerate() {
            let from = if i > 0 {
                Port::Slot(entries[i - 1].1)
            } else if closed {
                Port::Slot(entries[d - 1].1)
            } else {
                Port::Corner(m3(k + 2))
            };
            segs.push(Segment {
                tri,
                from,
                to: Port::Slot(k),
            });
        }
        let check_next = |i: usize, next_tri: usize| -> Result<()> {
            if entries[i].0 != next_tri {
                return Err(Error::InvalidCurve(format!(
                    "crossing {} enters triangle {}, not {}",
                    i + 1,
                    entries[i].0 + 1,
                    next_tri + 1
                )));
            }
            Ok(())
        };
        for i in 0..d - 1 {
            check_next(i, crossings[i + 1].0)?;
        }
        if closed {
            check_next(d - 1, crossings[0].0)?;
            Ok(Curve::closed(segs))
        } else {
            let (u, l) = entries[d - 1];
            segs.push(Segment {
                tri: u,
                from: Port::Slot(l),
                to: Port::Corner(m3(l + 2)),
            });
            Ok(Curve::path(segs, tags))
        }
    }

    /// Parse the curve file format against a triangulation and validate.
    pub fn parse(text: &str, tt: &TaggedTriangulation) -> Result<Curve> {
        let t = &tt.ideal;
        let mut closed = None;
        let mut crossings = Vec::new();
        let mut ends = Vec::new();
        let mut in_t = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let w: Vec<&str> = line.split_whitespace().collect();
            match w[0] {
                "curve" => {
                    closed = match w.get(1).copied() {
                        Some("closed=1") => Some(true),
                        Some("closed=0") => Some(false),
                        _ => return Err(parse_err(line_no, "expected closed=0 or closed=1")),
                    }
                }
                "tri" => {
                    if w.len() < 4 || w[2] != "cross" {
                        return Err(parse_err(line_no, "expected `tri <i> cross <arc>`"));
                    }
                    let tri: usize = parse_num(w[1], line_no)?;
                    let arc: usize = parse_num(w[3], line_no)?;
                    if tri == 0 || tri > t.triangles().len() {
                        return Err(parse_err(line_no, format!("no triangle {tri}")));
                    }
                    let tri = tri - 1;
                    let positions: Vec<usize> =
                        (0..3).filter(|&k| t.triangles()[tri][k] == arc).collect();
                    let slot = match (w.get(4), positions.as_slice()) {
                        (Some(extra), _) => {
                            let v = extra
                                .strip_prefix("slot=")
                                .ok_or_else(|| parse_err(line_no, format!("unknown `{extra}`")))?;
                            let k: usize = parse_num(v, line_no)?;
                            if !positions.contains(&k) {
                                return Err(parse_err(line_no, format!("slot {k} is not arc {arc}")));
                            }
                            k
                        }
                        (None, [k]) => *k,
                        (None, []) => {
                            return Err(parse_err(
                                line_no,
                                format!("arc {arc} is not a side of triangle {}", tri + 1),
                            ))
                        }
                        (None, _) => {
                            return Err(parse_err(line_no, "ambiguous side; add slot=<0|1|2>"))
                        }
                    };
                    crossings.push((tri, slot));
                }
                "arc" => {
                    if w.len() != 2 {
                        return Err(parse_err(line_no, "expected `arc <label>`"));
                    }
                    in_t = Some(parse_num::<usize>(w[1], line_no)?);
                }
                "end" => {
                    let mut tag = Tag::Plain;
                    let mut vertex = None;
                    for item in &w[1..] {
                        if let Some(v) = item.strip_prefix("tag=") {
                            tag = match v {
                                "plain" => Tag::Plain,
                                "notched" => Tag::Notched,
                                _ => return Err(parse_err(line_no, format!("bad tag `{v}`"))),
                            };
                        } else if let Some(id) = item
                            .strip_prefix("puncture:")
                            .or_else(|| item.strip_prefix("marked:"))
                        {
                            vertex = Some(parse_num::<usize>(id, line_no)?);
                        } else if *item != "marked" && *item != "puncture" {
                            return Err(parse_err(line_no, format!("unknown `{item}`")));
                        }
                    }
                    ends.push((vertex, tag, line_no));
                }
                other => return Err(parse_err(line_no, format!("unknown directive `{other}`"))),
            }
        }
        let closed = closed.ok_or_else(|| parse_err(0, "missing `curve` line"))?;
        if ends.len() > 2 || (closed && !ends.is_empty()) {
            return Err(parse_err(0, "too many `end` lines"));
        }
        let mut tags = [Tag::Plain; 2];
        for (i, e) in ends.iter().enumerate() {
            tags[i] = e.1;
        }
        let curve = match in_t {
            Some(l) if crossings.is_empty() && !closed => Curve::arc_in_triangulation(l, tags),
            Some(_) => return Err(parse_err(0, "`arc` excludes crossings and closed=1")),
            None => Curve::from_crossings(t, closed, &crossings, tags)?,
        };
        if let Some((a, b)) = curve.endpoints(t) {
            for (i, (vertex, _, line_no)) in ends.iter().enumerate() {
                let actual = if i == 0 { a } else { b };
                if let Some(v) = vertex {
                    if *v != actual + 1 {
                        return Err(parse_err(
                            *line_no,
                            format!("end is at vertex {}, not {v}", actual + 1),
                        ));
                    }
                }
            }
        }
        curve.validate(tt)
    }

    /// Render in the curve file format.
    pub fn to_text(&self, t: &IdealTriangulation) -> String {
        let mut out = format!("curve closed={}\n", u8::from(self.is_closed()));
        match &self.shape {
            Shape::InTriangulation(l) => out.push_str(&format!("arc {l}\n")),
            _ => {
                for (tri, k) in self.crossings() {
                    out.push_str(&format!("tri {} cross {}", tri + 1, t.triangles()[tri][k]));
                    if t.triangles()[tri].iter().filter(|&&s| s == t.triangles()[tri][k]).count() > 1 {
                        out.push_str(&format!(" slot={k}"));
                    }
                    out.push('\n');
                }
            }
        }
        if let Some((a, b)) = self.endpoints(t) {
            for (v, tag) in [(a, self.tags[0]), (b, self.tags[1])] {
                let kind = if t.is_puncture(v) { "puncture" } else { "marked" };
                let tag = match tag {
                    Tag::Plain => "plain",
                    Tag::Notched => "notched",
                };
                out.push_str(&format!("end {kind}:{} tag={tag}\n", v + 1));
            }
        }
        out
    }
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize) -> Result<T> {
    s.parse()
        .map_err(|_| parse_err(line, format!("bad number `{s}`")))
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Port::Slot(k) => write!(f, "s{k}"),
            Port::Corner(c) => write!(f, "c{c}"),
            Port::Open => write!(f, "~"),
        }
    }
}

/// Position of a port relative to the quadrilateral of a flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Feature {
    /// Outer sides `a, b, c, d` as 0..4.
    Side(usize),
    /// Vertices `P0, P1, P2, Q2` as 0..4.
    Vertex(usize),
    Diagonal,
}

const P0: usize = 0;
const P1: usize = 1;
const P2: usize = 2;
const Q2: usize = 3;

struct Quad<'a> {
    rec: &'a FlipRecord,
}

impl Quad<'_> {
    fn old_feature(&self, tri: usize, port: Port) -> Result<Feature> {
        let r = if tri == self.rec.t1 { self.rec.r1 } else { self.rec.r2 };
        let first = tri == self.rec.t1;
        Ok(match port {
            Port::Slot(k) => match (m3(k + 3 - r), first) {
                (0, _) => Feature::Diagonal,
                (i, true) => Feature::Side(i - 1),
                (i, false) => Feature::Side(i + 1),
            },
            Port::Corner(c) => Feature::Vertex(match (m3(c + 3 - r), first) {
                (i, true) => i,
                (0, false) => P1,
                (1, false) => P0,
                _ => Q2,
            }),
            Port::Open => {
                return Err(Error::Unsupported(
                    "cannot transport a truncated spiral across a flip".into(),
                ))
            }
        })
    }

    /// New triangle (0 for the first, 1 for the second) and rotated position.
    fn places(f: Feature) -> &'static [(usize, usize)] {
        match f {
            Feature::Side(0) => &[(0, 2)],
            Feature::Side(1) => &[(1, 1)],
            Feature::Side(2) => &[(1, 2)],
            Feature::Side(_) => &[(0, 1)],
            Feature::Vertex(P0) => &[(1, 2)],
            Feature::Vertex(P1) => &[(0, 2)],
            Feature::Vertex(P2) => &[(0, 0), (1, 1)],
            Feature::Vertex(_) => &[(0, 1), (1, 0)],
            Feature::Diagonal => &[(0, 0), (1, 0)],
        }
    }

    fn tri(&self, which: usize) -> (usize, usize) {
        if which == 0 {
            (self.rec.t1, self.rec.r1)
        } else {
            (self.rec.t2, self.rec.r2)
        }
    }

    fn port(&self, f: Feature, which: usize) -> Port {
        let (_, rot) = Self::places(f)
            .iter()
            .copied()
            .find(|&(w, _)| w == which)
            .expect("feature lies in this triangle");
        let (_, r) = self.tri(which);
        match f {
            Feature::Vertex(_) => Port::Corner(m3(rot + r)),
            _ => Port::Slot(m3(rot + r)),
        }
    }

    /// Replace one maximal run through the quadrilateral.
    fn rewrite(&self, x: Feature, y: Feature) -> Result<Vec<Segment>> {
        let px = Self::places(x);
        let py = Self::places(y);
        if let Some(&(w, _)) = px.iter().find(|(w, _)| py.iter().any(|(v, _)| v == w)) {
            let (tri, _) = self.tri(w);
            return Ok(vec![Segment {
                tri,
                from: self.port(x, w),
                to: self.port(y, w),
            }]);
        }
        let (wa, wb) = (px[0].0, py[0].0);
        let diag = |w: usize| Port::Slot(self.tri(w).1);
        Ok(vec![
            Segment {
                tri: self.tri(wa).0,
                from: self.port(x, wa),
                to: diag(wa),
            },
            Segment {
                tri: self.tri(wb).0,
                from: diag(wb),
                to: self.port(y, wb),
            },
        ])
    }
}

fn relabel(label: usize, swaps: &[(usize, usize)]) -> usize {
    swaps.iter().fold(label, |l, &(a, b)| {
        if l == a {
            b
        } else if l == b {
            a
        } else {
            l
        }
    })
}

/// Transport a curve on `old` across one tagged flip, producing the same
/// curve described on `new`.
pub fn transport(
    c: &Curve,
    old: &TaggedTriangulation,
    new: &TaggedTriangulation,
    step: &crate::surface::FlipStep,
) -> Result<Curve> {
    let rec = &step.record;
    let quad = Quad { rec };
    let in_quad = |tri: usize| tri == rec.t1 || tri == rec.t2;
    let shape = match &c.shape {
        Shape::InTriangulation(l) => {
            let l = relabel(*l, &step.swaps_before);
            if l == rec.arc {
                let segs = quad.rewrite(Feature::Vertex(P0), Feature::Vertex(P1))?;
                Shape::Path(segs)
            } else {
                Shape::InTriangulation(relabel(l, &step.swaps_after))
            }
        }
        Shape::Path(segs) | Shape::Closed(segs) => {
            let closed = c.is_closed();
            let mut segs = segs.clone();
            if closed {
                let start = (0..segs.len())
                    .find(|&i| {
                        !in_quad(segs[i].tri)
                            || quad.old_feature(segs[i].tri, segs[i].from).ok()
                                != Some(Feature::Diagonal)
                    })
                    .ok_or_else(|| Error::InvalidCurve("curve only crosses the flipped arc".into()))?;
                segs.rotate_left(start);
            }
            let mut out = Vec::with_capacity(segs.len() + 2);
            let mut i = 0;
            while i < segs.len() {
                let s = segs[i];
                if !in_quad(s.tri) {
                    out.push(s);
                    i += 1;
                    continue;
                }
                let x = quad.old_feature(s.tri, s.from)?;
                let mut j = i;
                while quad.old_feature(segs[j].tri, segs[j].to)? == Feature::Diagonal {
                    j += 1;
                    if j >= segs.len() {
                        return Err(Error::InvalidCurve("run leaves through the diagonal".into()));
                    }
                }
                let y = quad.old_feature(segs[j].tri, segs[j].to)?;
                if matches!((x, y), (Feature::Vertex(P2), Feature::Vertex(Q2)) | (Feature::Vertex(Q2), Feature::Vertex(P2)))
                {
                    let mut tags = c.tags;
                    if x == Feature::Vertex(Q2) {
                        tags.swap(0, 1);
                    }
                    return Ok(Curve::arc_in_triangulation(
                        relabel(rec.arc, &step.swaps_after),
                        tags,
                    ));
                }
                out.extend(quad.rewrite(x, y)?);
                i = j + 1;
            }
            if closed {
                Shape::Closed(out)
            } else {
                Shape::Path(out)
            }
        }
    };
    let mut curve = Curve {
        shape,
        tags: c.tags,
    };
    if let (Shape::InTriangulation(_), Some((a, b)), Some((na, nb))) = (
        &curve.shape,
        c.endpoints(&old.ideal),
        curve.endpoints(&new.ideal),
    ) {
        if a != b && (na, nb) == (b, a) {
            curve.tags.swap(0, 1);
        }
    }
    curve.validate(new)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ANNULUS: &str = include_str!("../corpus/annulus.tri");
    const CORE: &str = include_str!("../corpus/annulus.core.curve");

    fn fixtures() -> Vec<(TaggedTriangulation, Curve)> {
        [
            (ANNULUS, CORE),
            (
                include_str!("../corpus/annulus21.tri"),
                include_str!("../corpus/annulus21.core.curve"),
            ),
            (
                include_str!("../corpus/torus1.tri"),
                include_str!("../corpus/torus1.a.curve"),
            ),
            (
                include_str!("../corpus/torus1.tri"),
                include_str!("../corpus/torus1.b.curve"),
            ),
        ]
        .into_iter()
        .map(|(t, c)| {
            let t = TaggedTriangulation::parse(t).unwrap();
            let c = Curve::parse(c, &t).unwrap();
            (t, c)
        })
        .collect()
    }

    #[test]
    fn annulus_core_curve() {
        let (t, c) = fixtures().remove(0);
        assert!(c.is_closed());
        assert_eq!(c.crossing_labels(&t.ideal), vec![1, 2]);
        assert_eq!(c.crossing_monomial(&t.ideal, 0).to_string(), "x1*x2");
        let rotated = Curve::parse("curve closed=1\ntri 2 cross 2\ntri 1 cross 1\n", &t).unwrap();
        assert_eq!(rotated, c);
    }

    #[test]
    fn arcs_in_and_across() {
        let t = TaggedTriangulation::parse(include_str!("../corpus/polygon5.tri")).unwrap();
        let a = Curve::parse("curve closed=0\narc 2\n", &t).unwrap();
        assert!(a.crossing_monomial(&t.ideal, 0).is_one());
        let b = Curve::parse("curve closed=0\ntri 1 cross 1\ntri 2 cross 2\n", &t).unwrap();
        assert_eq!(b.crossing_monomial(&t.ideal, 0).to_string(), "x1*x2");
        assert!(Curve::parse("curve closed=0\ntri 1 cross 2\n", &t).is_err());
        assert!(Curve::parse("curve closed=0\ntri 1 cross 1\ntri 1 cross 1\n", &t).is_err());
        let text = b.to_text(&t.ideal);
        assert_eq!(Curve::parse(&text, &t).unwrap(), b);
    }

    #[test]
    fn transport_round_trips() {
        for (t, c) in fixtures() {
            for k in 1..=t.n() {
                let (t2, step) = t.flip(k).unwrap();
                let c2 = transport(&c, &t, &t2, &step).unwrap();
                let (t3, step2) = t2.flip(k).unwrap();
                let c3 = transport(&c2, &t2, &t3, &step2).unwrap();
                assert_eq!(t3, t);
                assert_eq!(
                    c3.crossing_vector(&t3.ideal),
                    c.crossing_vector(&t.ideal),
                    "k={k}"
                );
            }
        }
    }

    #[test]
    fn flipping_an_arc_of_the_triangulation() {
        let t = TaggedTriangulation::parse(include_str!("../corpus/polygon5.tri")).unwrap();
        let a = Curve::arc_in_triangulation(1, [Tag::Plain; 2]);
        let (t2, step) = t.flip(1).unwrap();
        let a2 = transport(&a, &t, &t2, &step).unwrap();
        assert_eq!(a2.crossing_labels(&t2.ideal), vec![1]);
        let (t3, step) = t2.flip(1).unwrap();
        let a3 = transport(&a2, &t2, &t3, &step).unwrap();
        assert_eq!(a3, a);
    }
}
