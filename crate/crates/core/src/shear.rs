//! Dual shear coordinates of laminates with respect to tagged
//! triangulations.

use crate::curve::{transport, Curve, Port, Segment, Shape, Tag};
use crate::error::{Error, Result};
use crate::mutation::{ext_matrix_mutate, ExtendedMatrix};
use crate::surface::{m3, IdealTriangulation, TaggedTriangulation};

pub type ShearVector = Vec<i64>;

/// Rotation sense used when sliding or spiralling an end around its vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Turn {
    Clockwise,
    CounterClockwise,
}

impl Turn {
    fn for_end(t: &IdealTriangulation, v: usize, tag: Tag) -> Turn {
        if t.is_puncture(v) && tag == Tag::Notched {
            Turn::CounterClockwise
        } else {
            Turn::Clockwise
        }
    }
}

/// Sign contributed by one crossing, read from how the curve turns in the
/// triangles on either side of the crossed arc.
fn crossing_sign(before: &Segment, after: &Segment) -> i64 {
    let (Port::Slot(a), Port::Slot(s)) = (before.from, before.to) else {
        return 0;
    };
    let (Port::Slot(k), Port::Slot(b)) = (after.from, after.to) else {
        return 0;
    };
    match (a == m3(s + 1), a == m3(s + 2), b == m3(k + 1), b == m3(k + 2)) {
        // S shape
        (true, _, true, _) => -1,
        // Z shape
        (_, true, _, true) => 1,
        _ => 0,
    }
}

/// Prepend segments that continue the curve backwards from its first
/// segment, turning around the vertex at `corner` of that triangle. The walk
/// stops at the boundary, or after `limit` steps with an open end.
fn extend_start(t: &IdealTriangulation, segs: &mut Vec<Segment>, corner: usize, limit: usize) {
    let mut prefix = Vec::new();
    let mut cur = segs[0];
    let mut cv = corner;
    for _ in 0..limit {
        let Port::Slot(j) = cur.from else { break };
        let Some((t2, j2)) = t.partner(cur.tri, j) else {
            break;
        };
        // v is an end of side j; find the other side of t2 at v.
        let (from, c2) = if cv == j {
            (m3(j2 + 1), m3(j2 + 1))
        } else {
            (m3(j2 + 2), j2)
        };
        cur = Segment {
            tri: t2,
            from: Port::Slot(from),
            to: Port::Slot(j2),
        };
        cv = c2;
        prefix.push(cur);
    }
    if let Port::Slot(j) = cur.from {
        if t.partner(cur.tri, j).is_some() {
            cur.from = Port::Open;
            match prefix.last_mut() {
                Some(last) => *last = cur,
                None => segs[0] = cur,
            }
        }
    }
    prefix.reverse();
    prefix.append(segs);
    *segs = prefix;
}

fn reverse_segments(segs: &mut [Segment]) {
    segs.reverse();
    for s in segs.iter_mut() {
        *s = s.reversed();
    }
}

/// Start segment of the modified end at vertex `corner` of `tri`, which was
/// heading out through `exit`.
fn turned_start(corner: usize, exit: Port, tri: usize, turn: Turn) -> (Segment, usize) {
    let from = match turn {
        Turn::Clockwise => m3(corner + 2),
        Turn::CounterClockwise => corner,
    };
    (
        Segment {
            tri,
            from: Port::Slot(from),
            to: exit,
        },
        corner,
    )
}

/// The modified curve `L`, as a crossing sequence with slid or spiralled
/// ends.
fn laminate_curve(t: &IdealTriangulation, c: &Curve) -> Result<Vec<Segment>> {
    let limit = |v: usize| t.degree(v) + 2;
    match &c.shape {
        Shape::Closed(segs) => Ok(segs.clone()),
        Shape::Path(segs) => {
            if segs.len() < 2 {
                return Err(Error::InvalidCurve("an arc crossing nothing is an arc of the triangulation".into()));
            }
            let mut segs = segs.clone();
            let ends = [segs[0], segs[segs.len() - 1].reversed()];
            let mut corners = [0usize; 2];
            for (i, end) in ends.iter().enumerate() {
                let Port::Corner(cv) = end.from else {
                    return Err(Error::InvalidCurve("arc must end at marked points".into()));
                };
                let v = t.corners()[end.tri][cv];
                let (seg, corner) = turned_start(cv, end.to, end.tri, Turn::for_end(t, v, c.tags[i]));
                corners[i] = corner;
                if i == 0 {
                    segs[0] = seg;
                } else {
                    let last = segs.len() - 1;
                    segs[last] = seg.reversed();
                }
            }
            let v0 = t.corners()[ends[0].tri][corners[0]];
            extend_start(t, &mut segs, corners[0], limit(v0));
            reverse_segments(&mut segs);
            let v1 = t.corners()[ends[1].tri][corners[1]];
            extend_start(t, &mut segs, corners[1], limit(v1));
            reverse_segments(&mut segs);
            Ok(segs)
        }
        Shape::InTriangulation(l) => {
            let (t0, s) = *t
                .slots(*l)
                .first()
                .ok_or_else(|| Error::InvalidCurve(format!("no arc {l}")))?;
            let (t1, s1) = t
                .partner(t0, s)
                .ok_or_else(|| Error::InvalidCurve(format!("{l} is not an arc")))?;
            let u = t.corners()[t0][s];
            let w = t.corners()[t0][m3(s + 1)];
            let tu = Turn::for_end(t, u, c.tags[0]);
            let tw = Turn::for_end(t, w, c.tags[1]);
            // Each end moves off the arc into one of the two triangles.
            let (u_tri, u_from, u_corner, u_side) = match tu {
                Turn::Clockwise => (t0, m3(s + 2), s, s),
                Turn::CounterClockwise => (t1, m3(s1 + 1), m3(s1 + 1), s1),
            };
            let (w_tri, w_to, w_corner, w_side) = match tw {
                Turn::Clockwise => (t1, m3(s1 + 2), s1, s1),
                Turn::CounterClockwise => (t0, m3(s + 1), m3(s + 1), s),
            };
            let mut segs = if u_tri == w_tri && u_side == w_side {
                vec![Segment {
                    tri: u_tri,
                    from: Port::Slot(u_from),
                    to: Port::Slot(w_to),
                }]
            } else {
                vec![
                    Segment {
                        tri: u_tri,
                        from: Port::Slot(u_from),
                        to: Port::Slot(u_side),
                    },
                    Segment {
                        tri: w_tri,
                        from: Port::Slot(w_side),
                        to: Port::Slot(w_to),
                    },
                ]
            };
            extend_start(t, &mut segs, u_corner, limit(u));
            reverse_segments(&mut segs);
            extend_start(t, &mut segs, w_corner, limit(w));
            reverse_segments(&mut segs);
            Ok(segs)
        }
    }
}

/// Z-minus-S counts of `L` through every quadrilateral, for a triangulation
/// of non-negative signature, before the folded-side rule.
fn raw_counts(t: &IdealTriangulation, c: &Curve) -> Result<ShearVector> {
    let segs = laminate_curve(t, c)?;
    let mut sh = vec![0i64; t.n()];
    let len = segs.len();
    let pairs = if c.is_closed() { len } else { len.saturating_sub(1) };
    for i in 0..pairs {
        let (a, b) = (&segs[i], &segs[(i + 1) % len]);
        if let Port::Slot(s) = a.to {
            let label = t.triangles()[a.tri][s];
            sh[label - 1] += crossing_sign(a, b);
        }
    }
    Ok(sh)
}

/// Endpoint vertices of a curve in the order of its tags.
fn end_vertices(t: &IdealTriangulation, c: &Curve) -> Option<(usize, usize)> {
    c.endpoints(t)
}

/// Switch the tags of `c` at every end lying at one of `punctures`.
fn switch_tags_at(t: &IdealTriangulation, c: &Curve, punctures: &[usize]) -> Curve {
    let mut out = c.clone();
    if let Some((a, b)) = end_vertices(t, c) {
        if punctures.contains(&a) {
            out.tags[0] = out.tags[0].switched();
        }
        if punctures.contains(&b) {
            out.tags[1] = out.tags[1].switched();
        }
    }
    out
}

fn signature_zero_shear(t: &IdealTriangulation, c: &Curve) -> Result<ShearVector> {
    let mut sh = raw_counts(t, c)?;
    for (_, folded, lp, p) in t.self_folded() {
        let switched = switch_tags_at(t, c, &[p]);
        sh[folded - 1] = raw_counts(t, &switched)?[lp - 1];
    }
    Ok(sh)
}

/// Dual shear coordinates of a closed curve or tagged arc.
pub fn dual_shear(t: &TaggedTriangulation, c: &Curve) -> Result<ShearVector> {
    let notched: Vec<usize> = t.notched.iter().copied().collect();
    let reduced = switch_tags_at(&t.ideal, c, &notched);
    signature_zero_shear(&t.ideal, &reduced)
}

/// Check that flipping `k` acts on `[-B; Sh]` by extended matrix mutation.
/// Returns the verdict and both sides as text.
pub fn shear_flip_check(t: &TaggedTriangulation, k: usize, c: &Curve) -> Result<(bool, String, String)> {
    let (t2, step) = t.flip(k)?;
    let c2 = transport(c, t, &t2, &step)?;
    let before = ExtendedMatrix::from_exchange(&t.adjacency_matrix(), dual_shear(t, c)?)?;
    let predicted = ext_matrix_mutate(&before, k - 1)?;
    let actual = ExtendedMatrix::from_exchange(&t2.adjacency_matrix(), dual_shear(&t2, &c2)?)?;
    let pass = predicted == actual;
    Ok((pass, predicted.to_string(), actual.to_string()))
}
