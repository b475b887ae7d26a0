//! Verification campaigns over triangulations, curves and flip words, plus
//! lamination bookkeeping and corpus loading.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::curve::{transport, Curve, Shape, Tag};
use crate::error::{Error, Result};
use crate::mutation::{gvec_mutate_with_h, yseed_mutate, Coefficients, Seed};
use crate::poly::{LaurentPoly, PosRational};
use crate::shear::{dual_shear, shear_flip_check};
use crate::snakegraph::{bangle_of_lamination, msw_function, SnakeData};
use crate::surface::TaggedTriangulation;

/// Identity checked by a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    KeyLemmaF,
    KeyLemmaG,
    KeyLemmaH,
    ShearFlip,
    GEqualsShear,
    ArcVsCluster,
    Load,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::KeyLemmaF => "keylemma-F",
            Identity::KeyLemmaG => "keylemma-g",
            Identity::KeyLemmaH => "keylemma-h",
            Identity::ShearFlip => "shear-flip",
            Identity::GEqualsShear => "g-equals-shear",
            Identity::ArcVsCluster => "arc-vs-cluster",
            Identity::Load => "load",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct VerificationReport {
    pub case_id: String,
    pub identity: Identity,
    pub pass: bool,
    /// Both sides in canonical text when the check fails.
    pub witness: Option<(String, String)>,
}

impl VerificationReport {
    fn check(case_id: &str, identity: Identity, lhs: String, rhs: String, pass: bool) -> Self {
        VerificationReport {
            case_id: case_id.to_string(),
            identity,
            pass,
            witness: (!pass).then_some((lhs, rhs)),
        }
    }

    fn error(case_id: &str, identity: Identity, e: &Error) -> Self {
        VerificationReport {
            case_id: case_id.to_string(),
            identity,
            pass: false,
            witness: Some((format!("error: {e}"), String::new())),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}", self.identity, self.case_id)?;
        if let Some((l, r)) = &self.witness {
            write!(f, "\n    lhs: {l}\n    rhs: {r}")?;
        }
        Ok(())
    }
}

fn vec_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Check the flip identities for a closed curve: the F-polynomial relation
/// with the `(1 + y_k)^h` correction, `g_k = h_k - h'_k`, the full g-vector
/// rule, and `h = min(0, g)` on both sides.
pub fn verify_key_lemma(
    t: &TaggedTriangulation,
    k: usize,
    alpha: &Curve,
    case_id: &str,
) -> Result<Vec<VerificationReport>> {
    if !alpha.is_closed() {
        return Err(Error::Setup("the flip identities are stated for closed curves".into()));
    }
    let n = t.n();
    let kk = k - 1;
    let (t2, step) = t.flip(k)?;
    let alpha2 = transport(alpha, t, &t2, &step)?;
    let b = t.adjacency_matrix();
    let b2 = t2.adjacency_matrix();
    let d1 = SnakeData::compute(t, alpha)?;
    let d2 = SnakeData::compute(&t2, &alpha2)?;
    let h1 = d1.h_vector(&b)?;
    let h2 = d2.h_vector(&b2)?;
    let mut out = Vec::new();

    // F(y) (1 + y'_k)^(-h'_k)  =  F'(y') (1 + y_k)^(-h_k), both sides
    // subtraction-free; exponents are non-negative since h <= 0.
    let ys: Vec<PosRational> = (0..n)
        .map(|j| PosRational::from_poly(LaurentPoly::y(0, n, j)))
        .collect();
    let y_new = yseed_mutate(&ys, &b, kk)?;
    let one = PosRational::one(0, n);
    let lhs = PosRational::from_poly(d1.f_poly.clone()).mul(&one.add(&y_new[kk])?.pow(-h2[kk])?)?;
    let rhs = d2
        .f_poly
        .substitute(&y_new)?
        .mul(&one.add(&ys[kk])?.pow(-h1[kk])?)?;
    out.push(VerificationReport::check(
        case_id,
        Identity::KeyLemmaF,
        lhs.to_string(),
        rhs.to_string(),
        lhs.rf_eq(&rhs)?,
    ));

    let g_rule = gvec_mutate_with_h(&d1.g, h1[kk], &b, kk)?;
    let g_ok = d1.g[kk] == h1[kk] - h2[kk] && g_rule == d2.g;
    out.push(VerificationReport::check(
        case_id,
        Identity::KeyLemmaG,
        format!("g={} h_k-h'_k={} rule={}", vec_text(&d1.g), h1[kk] - h2[kk], vec_text(&g_rule)),
        format!("g_k={} g'={}", d1.g[kk], vec_text(&d2.g)),
        g_ok,
    ));

    let min0 = |g: &[i64]| g.iter().map(|&x| x.min(0)).collect::<Vec<_>>();
    let h_ok = h1 == min0(&d1.g) && h2 == min0(&d2.g);
    out.push(VerificationReport::check(
        case_id,
        Identity::KeyLemmaH,
        format!("h={} h'={}", vec_text(&h1), vec_text(&h2)),
        format!("min(0,g)={} min(0,g')={}", vec_text(&min0(&d1.g)), vec_text(&min0(&d2.g))),
        h_ok,
    ));
    Ok(out)
}

/// Compare the bangle function of an arc with the cluster variable obtained
/// by mutating the initial seed along `word` (1-based labels).
pub fn verify_arc_bangle(
    t: &TaggedTriangulation,
    arc: &Curve,
    word: &[usize],
    case_id: &str,
) -> Result<VerificationReport> {
    let mut cur = t.clone();
    let mut c = arc.clone();
    for &k in word {
        let (next, step) = cur.flip(k)?;
        c = transport(&c, &cur, &next, &step)?;
        cur = next;
    }
    let label = (1..=cur.n())
        .find(|&l| tagged_arc(&cur, l).is_ok_and(|a| same_tagged_arc(&cur, &a, &c)))
        .ok_or_else(|| Error::Setup("the flip word does not produce the arc".into()))?;
    let word0: Vec<usize> = word.iter().map(|k| k - 1).collect();
    let seed = Seed::initial(t.adjacency_matrix(), Coefficients::None).mutate_word(&word0)?;
    let cluster = &seed.x[label - 1];
    let msw = PosRational::from_poly(msw_function(t, arc, false)?);
    Ok(VerificationReport::check(
        case_id,
        Identity::ArcVsCluster,
        msw.to_string(),
        cluster.to_string(),
        msw.rf_eq(cluster)?,
    ))
}

/// The arc that is `label` in the triangulation reached by `word`, drawn on
/// the starting triangulation.
pub fn arc_from_word(t: &TaggedTriangulation, word: &[usize], label: usize) -> Result<Curve> {
    let mut tris = vec![t.clone()];
    for &k in word {
        let (next, _) = tris.last().expect("nonempty").flip(k)?;
        tris.push(next);
    }
    let mut c = tagged_arc(tris.last().expect("nonempty"), label)?;
    for (i, &k) in word.iter().enumerate().rev() {
        let (back, step) = tris[i + 1].flip(k)?;
        c = transport(&c, &tris[i + 1], &back, &step)?.reindexed(&back, &tris[i])?;
    }
    Ok(c)
}

/// The tagged arc carrying `label` in `t`, as an arc of `T°` with end tags.
/// A loop stands for its folded side notched at the puncture.
pub fn tagged_arc(t: &TaggedTriangulation, label: usize) -> Result<Curve> {
    let ideal = &t.ideal;
    let (arc, inner) = match ideal.self_folded().iter().find(|s| s.2 == label) {
        Some(&(_, folded, _, p)) => (folded, Some(p)),
        None => (label, None),
    };
    let (a, b) = ideal
        .endpoints(arc)
        .ok_or_else(|| Error::InvalidCurve(format!("{label} is not an arc")))?;
    let tag = |v: usize| {
        if Some(v) == inner || t.notched.contains(&v) {
            Tag::Notched
        } else {
            Tag::Plain
        }
    };
    Ok(Curve::arc_in_triangulation(arc, [tag(a), tag(b)]))
}

fn same_tagged_arc(t: &TaggedTriangulation, a: &Curve, b: &Curve) -> bool {
    match (&a.shape, &b.shape) {
        (Shape::InTriangulation(x), Shape::InTriangulation(y)) if x == y => {
            a.tags == b.tags
                || (t.ideal.endpoints(*x).is_some_and(|(u, v)| u == v) && a.tags == [b.tags[1], b.tags[0]])
        }
        _ => false,
    }
}

/// Report every identity along a flip word for one closed curve. Flip
/// identities are checked per step and `g = Sh` at every stop.
pub fn verify_word(
    t: &TaggedTriangulation,
    alpha: &Curve,
    word: &[usize],
    case_id: &str,
) -> Vec<VerificationReport> {
    let mut out = Vec::new();
    let mut cur = t.clone();
    let mut c = alpha.clone();
    let g_eq = |tt: &TaggedTriangulation, cc: &Curve, id: &str| -> VerificationReport {
        let res = (|| -> Result<VerificationReport> {
            let g = SnakeData::compute(tt, cc)?.g;
            let sh = dual_shear(tt, cc)?;
            Ok(VerificationReport::check(
                id,
                Identity::GEqualsShear,
                vec_text(&g),
                vec_text(&sh),
                g == sh,
            ))
        })();
        res.unwrap_or_else(|e| VerificationReport::error(id, Identity::GEqualsShear, &e))
    };
    out.push(g_eq(&cur, &c, &format!("{case_id} @0")));
    for (i, &k) in word.iter().enumerate() {
        let id = format!("{case_id} @{} k={k}", i + 1);
        match verify_key_lemma(&cur, k, &c, &id) {
            Ok(r) => out.extend(r),
            Err(e) => out.push(VerificationReport::error(&id, Identity::KeyLemmaF, &e)),
        }
        match shear_flip_check(&cur, k, &c) {
            Ok((pass, lhs, rhs)) => {
                out.push(VerificationReport::check(&id, Identity::ShearFlip, lhs, rhs, pass))
            }
            Err(e) => out.push(VerificationReport::error(&id, Identity::ShearFlip, &e)),
        }
        let step = cur.flip(k).and_then(|(next, st)| {
            let moved = transport(&c, &cur, &next, &st)?;
            Ok((next, moved))
        });
        match step {
            Ok((next, moved)) => {
                cur = next;
                c = moved;
            }
            Err(e) => {
                out.push(VerificationReport::error(&id, Identity::Load, &e));
                return out;
            }
        }
        out.push(g_eq(&cur, &c, &format!("{case_id} @{}", i + 1)));
    }
    out
}

/// A laminate with its multiplicity.
#[derive(Clone, Debug)]
pub struct Lamination {
    pub laminates: Vec<(Curve, u32)>,
    /// Compatibility is asserted by whoever built the lamination.
    pub declared_compatible: bool,
}

impl Lamination {
    pub fn new(laminates: Vec<(Curve, u32)>, declared_compatible: bool) -> Result<Self> {
        if laminates.iter().any(|(_, m)| *m == 0) {
            return Err(Error::Setup("multiplicities must be positive".into()));
        }
        Ok(Lamination {
            laminates,
            declared_compatible,
        })
    }

    /// Disjoint union of two laminations.
    pub fn union(&self, other: &Lamination) -> Lamination {
        let mut laminates = self.laminates.clone();
        laminates.extend(other.laminates.iter().cloned());
        Lamination {
            laminates,
            declared_compatible: self.declared_compatible && other.declared_compatible,
        }
    }

    pub fn bangle(&self, t: &TaggedTriangulation, principal: bool) -> Result<LaurentPoly> {
        if !self.declared_compatible {
            return Err(Error::Setup("lamination is not declared compatible".into()));
        }
        bangle_of_lamination(t, &self.laminates, principal)
    }
}

/// One triangulation with its closed-curve fixtures.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub triangulation: TaggedTriangulation,
    pub curves: Vec<(String, Curve)>,
}

/// Load every `*.tri` file in `dir`, attaching `<stem>.<name>.curve` files.
/// Failures are returned per file rather than aborting the scan.
pub fn load_corpus(dir: &Path) -> Result<Vec<std::result::Result<CorpusEntry, (String, Error)>>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .collect();
    files.sort();
    let mut out = Vec::new();
    for path in files.iter().filter(|p| p.extension().is_some_and(|e| e == "tri")) {
        let stem = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_string();
        let entry = (|| -> Result<CorpusEntry> {
            let t = TaggedTriangulation::parse(&std::fs::read_to_string(path)?)?;
            let mut curves = Vec::new();
            for cp in &files {
                let name = cp.file_name().and_then(|s| s.to_str()).unwrap_or_default();
                if let Some(rest) = name.strip_prefix(&format!("{stem}.")) {
                    if let Some(cname) = rest.strip_suffix(".curve") {
                        let c = Curve::parse(&std::fs::read_to_string(cp)?, &t)?;
                        curves.push((cname.to_string(), c));
                    }
                }
            }
            Ok(CorpusEntry {
                name: stem.clone(),
                triangulation: t,
                curves,
            })
        })();
        out.push(entry.map_err(|e| (stem, e)));
    }
    Ok(out)
}

/// All flip words of length at most `max_len` without immediate repeats.
pub fn flip_words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for k in 1..=n {
                if w.last() != Some(&k) {
                    let mut v: Vec<usize> = w.clone();
                    v.push(k);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn word_text(w: &[usize]) -> String {
    w.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
}

/// Settings for [`run_corpus`].
#[derive(Clone, Debug)]
pub struct CorpusConfig {
    pub dir: PathBuf,
    /// Longest flip word applied to closed-curve fixtures.
    pub max_word: usize,
    /// Longest flip word for the arc-versus-cluster check; 0 skips it.
    pub arc_word: usize,
}

/// Run every closed-curve fixture along every flip word of bounded length.
/// Reports come back sorted by case id.
pub fn run_corpus(config: &CorpusConfig) -> Result<Vec<VerificationReport>> {
    let entries = load_corpus(&config.dir)?;
    let mut jobs = Vec::new();
    let mut arc_jobs = Vec::new();
    let mut out = Vec::new();
    for entry in entries {
        match entry {
            Err((name, e)) => out.push(VerificationReport::error(&name, Identity::Load, &e)),
            Ok(entry) => {
                if config.arc_word > 0 {
                    for w in flip_words(entry.triangulation.n(), config.arc_word) {
                        arc_jobs.push((entry.clone(), w));
                    }
                }
                for (cname, c) in &entry.curves {
                    for w in flip_words(entry.triangulation.n(), config.max_word) {
                        jobs.push((entry.clone(), cname.clone(), c.clone(), w));
                    }
                }
            }
        }
    }
    let reports = crate::par::flat_map(&jobs, |(e, cname, c, w)| {
        let id = format!("{}/{} [{}]", e.name, cname, word_text(w));
        verify_word(&e.triangulation, c, w, &id)
    });
    out.extend(reports);
    out.extend(crate::par::flat_map(&arc_jobs, |(e, w)| {
        let t = &e.triangulation;
        (1..=t.n())
            .map(|l| {
                let id = format!("{}/arc {l} [{}]", e.name, word_text(w));
                arc_from_word(t, w, l)
                    .and_then(|a| verify_arc_bangle(t, &a, w, &id))
                    .unwrap_or_else(|err| VerificationReport::error(&id, Identity::ArcVsCluster, &err))
            })
            .collect()
    }));
    out.sort();
    out.dedup();
    Ok(out)
}

/// Shear vectors at every stop along `word`, each paired with the verdict
/// of the extended-matrix identity for the flip leading to it.
pub fn shear_along_word(
    t: &TaggedTriangulation,
    c: &Curve,
    word: &[usize],
) -> Result<Vec<(Vec<i64>, bool)>> {
    let mut cur = t.clone();
    let mut curve = c.clone();
    let mut out = vec![(dual_shear(&cur, &curve)?, true)];
    for &k in word {
        let (pass, _, _) = shear_flip_check(&cur, k, &curve)?;
        let (next, step) = cur.flip(k)?;
        curve = transport(&curve, &cur, &next, &step)?;
        cur = next;
        out.push((dual_shear(&cur, &curve)?, pass));
    }
    Ok(out)
}
