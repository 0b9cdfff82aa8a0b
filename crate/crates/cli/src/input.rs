//! Text formats: facet files, cover files, the coefficient grammar, group
//! names, and inline lists of simplices and elements.

use std::sync::Arc;

use hsym::abelian::{FGAbelianGroup, FiniteGroup, GroupRingElement};
use hsym::complex::{library, library_names, Simplex, SimplicialComplex, StarOpen, Subcomplex};
use hsym::covers::CoverSpec;
use hsym::{Error, Int, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_vertices(text: &str, line: usize) -> Result<Vec<usize>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("'{t}' is not a vertex label") }))
        .collect()
}

/// One facet per line, vertex labels separated by whitespace or commas.
/// `#` starts a comment.
pub fn parse_facets(text: &str) -> Result<SimplicialComplex> {
    let mut facets = Vec::new();
    for (line, l) in content_lines(text) {
        let mut f = parse_vertices(l, line)?;
        f.sort_unstable();
        if let Some(w) = f.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!("line {line}: vertex {} repeated in a facet", w[0])));
        }
        facets.push(f);
    }
    if facets.is_empty() {
        return Err(Error::Parse { line: 0, message: "no facets".into() });
    }
    SimplicialComplex::from_facets(facets)
}

/// A built-in name or a path to a facet file.
pub fn load_complex(source: &str) -> Result<SimplicialComplex> {
    if library_names().contains(&source) {
        return library(source);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::Validation(format!("'{source}' is neither a built-in complex nor a readable file: {e}")))?;
    parse_facets(&text)
}

/// `Z^r + Z/d + ...`; `0` is the trivial group.
pub fn parse_coefficients(spec: &str) -> Result<FGAbelianGroup> {
    let bad = |why: &str| Error::Validation(format!("coefficient spec '{spec}': {why}"));
    let spec = spec.trim();
    if spec == "0" {
        return Ok(FGAbelianGroup::trivial());
    }
    let mut orders: Vec<Int> = Vec::new();
    for term in spec.split('+').map(str::trim) {
        let (base, power) = match term.split_once('^') {
            Some((b, p)) => (b.trim(), p.trim().parse::<usize>().map_err(|_| bad("exponent is not a number"))?),
            None => (term, 1),
        };
        let order = match base {
            "Z" => Int::from(0),
            _ => {
                let d = base.strip_prefix("Z/").ok_or_else(|| bad("terms look like Z, Z^r, Z/d or Z/d^k"))?;
                let d: u64 = d.trim().parse().map_err(|_| bad("modulus is not a number"))?;
                if d < 2 {
                    return Err(bad("moduli start at 2"));
                }
                Int::from(d)
            }
        };
        orders.extend(std::iter::repeat_n(order, power));
    }
    Ok(FGAbelianGroup::from_cyclic_orders(&orders))
}

/// `Zn` for `n <= 12`, `Z2xZ2`, `S3` or `Q8`.
pub fn parse_group(name: &str) -> Result<FiniteGroup> {
    match name {
        "Z2xZ2" => Ok(FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))),
        "S3" => Ok(FiniteGroup::symmetric(3)),
        "Q8" => Ok(FiniteGroup::quaternion()),
        _ => match name.strip_prefix('Z').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (1..=12).contains(&n) => Ok(FiniteGroup::cyclic(n)),
            _ => Err(Error::Validation(format!("unknown group '{name}'; try Zn (n <= 12), Z2xZ2, S3 or Q8"))),
        },
    }
}

/// Simplices separated by `;`, vertices by whitespace or commas.
pub fn parse_simplices(text: &str) -> Result<Vec<Simplex>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let mut v = parse_vertices(s, 1)?;
            v.sort_unstable();
            Ok(v)
        })
        .collect()
}

/// Comma-separated integer coordinates.
pub fn parse_element(text: &str) -> Result<Vec<Int>> {
    text.split(',')
        .map(str::trim)
        .map(|t| t.parse::<Int>().map_err(|_| Error::Validation(format!("'{t}' is not an integer coordinate"))))
        .collect()
}

/// Either one integer coefficient per group element (`1,0,-1`) or named
/// terms joined by `+` (`1*e + -1*(12)`).
pub fn parse_ring_element(group: &Arc<FiniteGroup>, text: &str) -> Result<GroupRingElement> {
    if !text.contains('*') {
        let coeffs = parse_element(text)?;
        if coeffs.len() != group.order() {
            return Err(Error::Validation(format!("{} coefficients for a group of order {}", coeffs.len(), group.order())));
        }
        return Ok(GroupRingElement::from_terms(group, coeffs.into_iter().enumerate()));
    }
    let mut terms = Vec::new();
    for term in text.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (c, name) = term.split_once('*').ok_or_else(|| Error::Validation(format!("term '{term}' is not c*name")))?;
        let c: Int = c.trim().parse().map_err(|_| Error::Validation(format!("'{c}' is not an integer")))?;
        let g = (0..group.order())
            .find(|&g| group.name(g) == name.trim())
            .ok_or_else(|| Error::Validation(format!("no element named '{}'", name.trim())))?;
        terms.push((g, c));
    }
    Ok(GroupRingElement::from_terms(group, terms))
}

/// `whole`, `empty`, `minus:<simplices>` for the complement of their
/// closure, or generator simplices of a union of open stars.
pub fn parse_open(x: &Arc<SimplicialComplex>, spec: &str) -> Result<StarOpen> {
    match spec.trim() {
        "whole" => Ok(StarOpen::whole(x)),
        "empty" => Ok(StarOpen::empty(x)),
        s => match s.strip_prefix("minus:") {
            Some(rest) => Ok(Subcomplex::spanned_by(x, &parse_simplices(rest)?)?.complement()),
            None => StarOpen::star_of(x, &parse_simplices(s)?),
        },
    }
}

/// `full:<vertices>` for a full subcomplex, otherwise facets.
pub fn parse_subcomplex(x: &Arc<SimplicialComplex>, spec: &str) -> Result<Subcomplex> {
    match spec.trim().strip_prefix("full:") {
        Some(rest) => Ok(Subcomplex::full(x, &parse_vertices(rest, 1)?)),
        None => Subcomplex::spanned_by(x, &parse_simplices(spec)?),
    }
}

/// One element per line as generator simplices; an optional line
/// `target: <open>` sets the target, which defaults to the whole complex.
pub fn parse_cover(x: &Arc<SimplicialComplex>, text: &str) -> Result<CoverSpec> {
    let mut target = StarOpen::whole(x);
    let mut elements = Vec::new();
    for (line, l) in content_lines(text) {
        let at = |e: Error| match e {
            Error::Parse { message, .. } => Error::Parse { line, message },
            e => Error::Parse { line, message: e.to_string() },
        };
        match l.strip_prefix("target:") {
            Some(rest) => target = parse_open(x, rest).map_err(at)?,
            None => elements.push(parse_open(x, l).map_err(at)?),
        }
    }
    CoverSpec::new(target, elements)
}
