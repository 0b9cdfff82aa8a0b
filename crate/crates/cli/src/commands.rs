//! One function per subcommand, each returning a report body and, where the
//! command decides something, a verdict.

use std::path::Path;
use std::sync::Arc;

use hsym::abelian::{FGAbelianGroup, FiniteGroup};
use hsym::anomaly::{build_central_extension, classify_anomalies};
use hsym::complex::{orient, OrientOutcome, SimplicialComplex, StarOpen, Subcomplex};
use hsym::covers::{descent_check, is_k_supportive, weiss_cover, CoverSpec, SupportVerdict, SupportiveParams, WeissStyle};
use hsym::homology::{
    compactly_supported_cohomology, homology, homotopy_groups_of_symmetry_space, poincare_duality_check,
};
use hsym::symmetry::{
    check_coherence, compare_in, defect_operator, fuse, fuse_into, permutation_invariant, random_nesting, QFormAlgebra,
    SymmetryOperator,
};
use hsym::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::*;
use crate::{input, manifest, Cli, Command, Common, Style};

pub struct Done {
    pub body: Value,
    pub verdict: Option<bool>,
}

fn done(body: Value) -> Result<Done> {
    Ok(Done { body, verdict: None })
}

fn decided(mut body: Value, verdict: bool) -> Result<Done> {
    body["verdict"] = json!(if verdict { "pass" } else { "fail" });
    Ok(Done { body, verdict: Some(verdict) })
}

/// Resolved global options.
struct Context {
    manifest: Option<manifest::Manifest>,
    complex: Option<(String, Arc<SimplicialComplex>)>,
    coefficients: FGAbelianGroup,
    q: usize,
}

impl Context {
    fn new(common: &Common) -> Result<Self> {
        let manifest = common.manifest.as_deref().map(manifest::ingest).transpose()?;
        let complex = match (&manifest, &common.complex) {
            (Some(m), _) => Some((m.source.clone(), m.complex.clone())),
            (None, Some(c)) => Some((c.clone(), Arc::new(input::load_complex(c)?))),
            (None, None) => None,
        };
        let coefficients = match (&common.coefficients, manifest.as_ref().and_then(|m| m.coefficients.clone())) {
            (Some(spec), _) => input::parse_coefficients(spec)?,
            (None, Some(a)) => a,
            (None, None) => FGAbelianGroup::integers(),
        };
        let q = common.q.or(manifest.as_ref().and_then(|m| m.q)).unwrap_or(0);
        Ok(Context { manifest, complex, coefficients, q })
    }

    fn complex(&self) -> Result<&Arc<SimplicialComplex>> {
        self.complex
            .as_ref()
            .map(|(_, x)| x)
            .ok_or_else(|| Error::Validation("this command needs --complex or --manifest".into()))
    }

    fn complex_report(&self) -> Result<Value> {
        let (source, x) = self.complex.as_ref().ok_or_else(|| Error::Validation("no complex".into()))?;
        Ok(complex_json(source, x))
    }

    fn algebra(&self) -> Result<QFormAlgebra> {
        QFormAlgebra::new(self.complex()?.clone(), self.q, self.coefficients.clone())
    }

    fn open(&self, spec: &str) -> Result<StarOpen> {
        match self.manifest.as_ref().and_then(|m| m.opens.get(spec)) {
            Some(u) => Ok(u.clone()),
            None => input::parse_open(self.complex()?, spec),
        }
    }

    fn subcomplex(&self, spec: &str) -> Result<Subcomplex> {
        match self.manifest.as_ref().and_then(|m| m.subcomplexes.get(spec)) {
            Some(k) => Ok(k.clone()),
            None => input::parse_subcomplex(self.complex()?, spec),
        }
    }

    fn cover(&self, spec: &str) -> Result<CoverSpec> {
        let x = self.complex()?;
        match spec {
            "weiss:vertex" => return weiss_cover(x, WeissStyle::VertexComplements),
            "weiss:simplex" => return weiss_cover(x, WeissStyle::SimplexComplements),
            _ => {}
        }
        if let Some(c) = self.manifest.as_ref().and_then(|m| m.covers.get(spec)) {
            return Ok(c.clone());
        }
        let text = std::fs::read_to_string(Path::new(spec))
            .map_err(|e| Error::Validation(format!("'{spec}' is not a known cover or a readable cover file: {e}")))?;
        input::parse_cover(x, &text)
    }

    fn group(&self, name: &str) -> Result<Arc<FiniteGroup>> {
        match self.manifest.as_ref().and_then(|m| m.groups.get(name)) {
            Some(g) => Ok(g.clone()),
            None => input::parse_group(name).map(Arc::new),
        }
    }

    fn operator(&self, f: &QFormAlgebra, support: &str, label: &str, flip: bool) -> Result<SymmetryOperator> {
        let m = self.subcomplex(support)?;
        let o = match orient(&m.to_complex())? {
            OrientOutcome::Oriented(o) => o,
            OrientOutcome::NonOrientable { .. } => {
                return Err(Error::Orientability("the support of a defect must be orientable".into()))
            }
        };
        let o = if flip { o.negated() } else { o };
        defect_operator(f, &m, &input::parse_element(label)?, &o)
    }
}

fn cover_json(c: &CoverSpec) -> Value {
    let mut elements: Vec<Value> = c.elements().iter().map(open_json).collect();
    elements.sort_by_key(|v| v.to_string());
    elements.dedup();
    json!({ "target": open_json(c.target()), "elements": elements, "is_cover": c.is_cover() })
}

fn parse_budget(budget: Option<&str>) -> Result<Option<usize>> {
    budget
        .map(|b| {
            b.trim()
                .parse::<usize>()
                .map_err(|_| Error::Validation(format!("{} must be a nonnegative integer, got '{b}'", crate::BUDGET_ENV)))
        })
        .transpose()
}

pub fn execute(cli: &Cli, budget: Option<&str>) -> Result<Done> {
    let budget = parse_budget(budget)?;
    let ctx = Context::new(&cli.common)?;
    let a = &ctx.coefficients;
    match &cli.command {
        Command::Homology { n } => {
            let x = ctx.complex()?;
            let d = x.dimension().unwrap_or(0);
            let degrees: Vec<Value> = (0..=d)
                .filter(|k| n.is_none_or(|n| n == *k))
                .map(|k| json!({ "degree": k, "group": group_json(&homology(x, k, a)) }))
                .collect();
            done(json!({ "complex": ctx.complex_report()?, "coefficients": group_json(a), "homology": degrees }))
        }
        Command::CohomologyC { open, n } => {
            let x = ctx.complex()?;
            let u = ctx.open(open)?;
            let d = x.dimension().unwrap_or(0);
            let degrees: Vec<Value> = (0..=d)
                .filter(|k| n.is_none_or(|n| n == *k))
                .map(|k| json!({ "degree": k, "group": group_json(compactly_supported_cohomology(&u, k, a).group()) }))
                .collect();
            done(json!({
                "complex": ctx.complex_report()?,
                "coefficients": group_json(a),
                "open": open_json(&u),
                "cohomology": degrees,
            }))
        }
        Command::Duality { open, unoriented } => {
            let x = ctx.complex()?;
            let u = ctx.open(open)?;
            let orientation = if *unoriented { None } else { orient(x)?.orientation() };
            let r = poincare_duality_check(&u, orientation.as_ref(), a)?;
            let degrees: Vec<Value> = r
                .degrees
                .iter()
                .map(|g| {
                    json!({
                        "degree": g.degree,
                        "compact": group_json(&g.compact),
                        "homology": group_json(&g.homology),
                        "pass": g.pass,
                    })
                })
                .collect();
            let body = json!({
                "complex": ctx.complex_report()?,
                "coefficients": group_json(a),
                "open": open_json(&u),
                "oriented": r.oriented,
                "degrees": degrees,
            });
            decided(body, r.pass())
        }
        Command::Operator { support, label, flip } => {
            let f = ctx.algebra()?;
            let op = ctx.operator(&f, support, label, *flip)?;
            done(json!({ "coefficients": group_json(a), "q": ctx.q, "operator": operator_json(&op, f.degree()) }))
        }
        Command::Fuse { support, label, label_b, support_b, within } => {
            let f = ctx.algebra()?;
            let first = ctx.operator(&f, support, label, false)?;
            let second = ctx.operator(&f, support_b.as_deref().unwrap_or(support), label_b, false)?;
            let fused = match within {
                Some(w) => fuse_into(&f, &ctx.open(w)?, &first, &second)?,
                None => fuse(&f, &first, &second)?,
            };
            done(json!({
                "coefficients": group_json(a),
                "q": ctx.q,
                "a": operator_json(&first, f.degree()),
                "b": operator_json(&second, f.degree()),
                "fused": operator_json(&fused, f.degree()),
            }))
        }
        Command::Compare { support, label, support_b, label_b, within } => {
            let f = ctx.algebra()?;
            let first = ctx.operator(&f, support, label, false)?;
            let second = ctx.operator(&f, support_b, label_b, false)?;
            let w = ctx.open(within)?;
            let equal = compare_in(&f, &w, &first, &second)?;
            let body = json!({
                "coefficients": group_json(a),
                "q": ctx.q,
                "within": open_json(&w),
                "a": operator_json(&first, f.degree()),
                "b": operator_json(&second, f.degree()),
                "equal": equal,
            });
            decided(body, equal)
        }
        Command::Pi { open, n, i } => {
            let u = ctx.open(open)?;
            let n = n.unwrap_or(ctx.q + 1);
            let groups = (0..=n)
                .filter(|k| i.is_none_or(|i| i == *k))
                .map(|k| Ok(json!({ "i": k, "group": group_json(&homotopy_groups_of_symmetry_space(&u, n, a, k)?) })))
                .collect::<Result<Vec<_>>>()?;
            done(json!({ "coefficients": group_json(a), "open": open_json(&u), "n": n, "homotopy": groups }))
        }
        Command::CoverCheck { cover, k, s, subdivisions } => {
            let c = ctx.cover(&cover.cover)?;
            let mut params = SupportiveParams::new(*k, *s).with_subdivisions(*subdivisions);
            if let Some(limit) = budget {
                params = params.with_limit(limit);
            }
            let verdict = is_k_supportive(&c, params)?;
            let (checked, counterexample) = match &verdict {
                SupportVerdict::Verified { checked } => (json!(checked), Value::Null),
                SupportVerdict::Counterexample { facets } => (Value::Null, simplices_json(facets.clone())),
            };
            let body = json!({
                "complex": ctx.complex_report()?,
                "cover": cover_json(&c),
                "k": k,
                "s": s,
                "subdivisions": subdivisions,
                "checked": checked,
                "counterexample": counterexample,
            });
            decided(body, verdict.is_verified())
        }
        Command::Weiss { style } => {
            let style = match style {
                Style::Vertex => WeissStyle::VertexComplements,
                Style::Simplex => WeissStyle::SimplexComplements,
            };
            let c = weiss_cover(ctx.complex()?, style)?;
            done(json!({ "complex": ctx.complex_report()?, "cover": cover_json(&c) }))
        }
        Command::Descent { cover } => {
            let f = ctx.algebra()?;
            let c = ctx.cover(&cover.cover)?;
            let r = descent_check(&f, &c)?;
            let body = json!({
                "complex": ctx.complex_report()?,
                "coefficients": group_json(a),
                "q": ctx.q,
                "cover": cover_json(&c),
                "poset_size": r.nodes,
                "colimit_size": r.colimit_size,
                "target_size": r.target_size,
                "injective": r.injective,
                "surjective": r.surjective,
                "bijective": r.bijective(),
                "witness": r.witness,
                "abelian_colimit": r.abelian_colimit.as_ref().map_or(Value::Null, group_json),
                "abelian_matches": r.abelian_matches,
            });
            decided(body, r.bijective())
        }
        Command::GroupRing { group, a: x, b } => {
            let g = ctx.group(group)?;
            let x = input::parse_ring_element(&g, x)?;
            let mut body = json!({
                "group": finite_group_json(&g),
                "a": ring_element_json(&x),
                "determinant": int_json(&x.unit_test().determinant),
            });
            if let Some(b) = b {
                let y = input::parse_ring_element(&g, b)?;
                body["b"] = ring_element_json(&y);
                body["sum"] = ring_element_json(&x.add(&y)?);
                body["product"] = ring_element_json(&x.mul(&y)?);
            }
            done(body)
        }
        Command::Unit { group, element } => {
            let g = ctx.group(group)?;
            let x = input::parse_ring_element(&g, element)?;
            let v = x.unit_test();
            let body = json!({
                "group": finite_group_json(&g),
                "element": ring_element_json(&x),
                "determinant": int_json(&v.determinant),
                "inverse": v.inverse.as_ref().map_or(Value::Null, ring_element_json),
            });
            decided(body, v.is_unit())
        }
        Command::Anomaly { group, degree } => {
            let g = ctx.group(group)?;
            let c = classify_anomalies(&g, *degree)?;
            let classes = c
                .group
                .elements()?
                .iter()
                .zip(c.representatives.iter().zip(&c.reduced))
                .map(|(class, (rep, red))| {
                    let ext = build_central_extension(red)?;
                    Ok(json!({
                        "class": ints_json(class),
                        "representative": cocycle_json(rep),
                        "reduced": cocycle_json(red),
                        "extension": { "order": ext.group().order(), "abelian": ext.group().is_abelian() },
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            let body = json!({
                "group": finite_group_json(&g),
                "degree": degree,
                "classes": group_json(&c.group),
                "h3_integral": group_json(&c.predicted),
                "representatives": classes,
            });
            decided(body, c.agrees())
        }
        Command::Coherence { seed, count } => {
            let x = ctx.complex()?;
            let f = ctx.algebra()?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut commuting = 0;
            let mut invariant = 0;
            let mut first_failure = Value::Null;
            for trial in 0..*count {
                let nesting = random_nesting(x, &mut rng);
                let v = check_coherence(&f, &nesting)?;
                let inputs: Vec<StarOpen> = nesting.levels.iter().flat_map(|(_, us)| us.iter().cloned()).collect();
                let reversed: Vec<usize> = (0..inputs.len()).rev().collect();
                let perm_ok = permutation_invariant(&f, &inputs, &nesting.outer, &reversed)?;
                commuting += usize::from(v.commutes);
                invariant += usize::from(perm_ok);
                if (!v.commutes || !perm_ok) && first_failure.is_null() {
                    first_failure = json!({ "trial": trial, "detail": v.counterexample });
                }
            }
            let body = json!({
                "complex": ctx.complex_report()?,
                "coefficients": group_json(a),
                "q": ctx.q,
                "seed": seed,
                "count": count,
                "commuting": commuting,
                "permutation_invariant": invariant,
                "first_failure": first_failure,
            });
            decided(body, commuting == *count && invariant == *count)
        }
    }
}
