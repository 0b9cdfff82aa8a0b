use super::{structure_map, Prefactorization};
use crate::abelian::{FGAbelianGroup, GroupHom};
use crate::complex::StarOpen;
use crate::error::{Error, Result};
use crate::Int;

/// A candidate morphism `F -> G`, given by one homomorphism per open of a
/// finite test family.
pub struct PrefactorizationMap<'a> {
    source: &'a dyn Prefactorization,
    target: &'a dyn Prefactorization,
    components: Vec<(StarOpen, GroupHom)>,
}

impl<'a> PrefactorizationMap<'a> {
    pub fn new(
        source: &'a dyn Prefactorization,
        target: &'a dyn Prefactorization,
        components: Vec<(StarOpen, GroupHom)>,
    ) -> Result<Self> {
        if **source.complex() != **target.complex() {
            return Err(Error::ParentMismatch);
        }
        for (u, h) in &components {
            let (a, b) = (source.value(u)?, target.value(u)?);
            if !h.source().is_isomorphic(&a) || !h.target().is_isomorphic(&b) {
                return Err(Error::GroupMismatch(format!("component on {u:?} is not a map {a} -> {b}")));
            }
        }
        Ok(PrefactorizationMap { source, target, components })
    }

    /// Multiplication by `k` on every open of the family, for `F -> F`.
    pub fn scalar(f: &'a dyn Prefactorization, family: &[StarOpen], k: &Int) -> Result<Self> {
        let components =
            family.iter().map(|u| Ok((u.clone(), GroupHom::scalar(&f.value(u)?, k)))).collect::<Result<Vec<_>>>()?;
        Self::new(f, f, components)
    }

    pub fn component(&self, u: &StarOpen) -> Option<&GroupHom> {
        self.components.iter().find(|(v, _)| v == u).map(|(_, h)| h)
    }

    pub fn components(&self) -> &[(StarOpen, GroupHom)] {
        &self.components
    }

    fn required(&self, u: &StarOpen) -> Result<&GroupHom> {
        self.component(u).ok_or_else(|| Error::Validation(format!("test family is not closed: no component on {u:?}")))
    }
}

/// Disjoint `inputs` inside `outer`.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub inputs: Vec<StarOpen>,
    pub outer: StarOpen,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismVerdict {
    pub ok: bool,
    pub counterexample: Option<String>,
}

fn agree(group: &FGAbelianGroup, a: &GroupHom, b: &GroupHom) -> Option<usize> {
    (0..a.matrix().ncols()).find(|&c| group.reduce(&a.matrix().column(c)) != group.reduce(&b.matrix().column(c)))
}

/// Checks `J_V ∘ m^F = m^G ∘ ⊕ J_{U_i}` for every configuration.
pub fn check_prefactorization_morphism(j: &PrefactorizationMap<'_>, configurations: &[Configuration]) -> Result<MorphismVerdict> {
    for (k, cfg) in configurations.iter().enumerate() {
        let outer = j.required(&cfg.outer)?;
        let inner = cfg.inputs.iter().map(|u| j.required(u)).collect::<Result<Vec<_>>>()?;
        let src = structure_map(j.source, &cfg.inputs, &cfg.outer)?;
        let tgt = structure_map(j.target, &cfg.inputs, &cfg.outer)?;
        let before = src.map.then(outer)?;
        let legs = inner
            .iter()
            .enumerate()
            .map(|(i, h)| h.then(&tgt.sum.injections[i]))
            .collect::<Result<Vec<_>>>()?;
        let after = src.sum.copair(&legs, &tgt.sum.group)?.then(&tgt.map)?;
        if let Some(c) = agree(after.target(), &before, &after) {
            return Ok(MorphismVerdict {
                ok: false,
                counterexample: Some(format!(
                    "configuration {k} ({:?} into {:?}): generator {c} goes to {:?} via the outer component and to {:?} via the inputs",
                    cfg.inputs,
                    cfg.outer,
                    before.matrix().column(c),
                    after.matrix().column(c)
                )),
            });
        }
    }
    Ok(MorphismVerdict { ok: true, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::library;
    use crate::symmetry::QFormAlgebra;
    use std::sync::Arc;

    fn setup() -> (QFormAlgebra, Vec<StarOpen>, Vec<Configuration>) {
        let x = Arc::new(library("S1hex").unwrap());
        let f = QFormAlgebra::new(x.clone(), 0, FGAbelianGroup::integers()).unwrap();
        let e1 = StarOpen::star_of(&x, &[vec![0, 1]]).unwrap();
        let e2 = StarOpen::star_of(&x, &[vec![2, 3]]).unwrap();
        let arc = StarOpen::star_of(&x, &[vec![1], vec![2]]).unwrap();
        let whole = StarOpen::whole(&x);
        let family = vec![e1.clone(), e2.clone(), arc.clone(), whole.clone()];
        let configs = vec![
            Configuration { inputs: vec![e1.clone(), e2.clone()], outer: arc.clone() },
            Configuration { inputs: vec![arc.clone()], outer: whole.clone() },
            Configuration { inputs: vec![e1, e2], outer: whole },
        ];
        (f, family, configs)
    }

    #[test]
    fn identity_and_scaling() {
        let (f, family, configs) = setup();
        for k in [1, 2, -3] {
            let j = PrefactorizationMap::scalar(&f, &family, &Int::from(k)).unwrap();
            let v = check_prefactorization_morphism(&j, &configs).unwrap();
            assert!(v.ok, "{v:?}");
        }
    }

    #[test]
    fn corrupted_square_is_named() {
        let (f, family, configs) = setup();
        let mut comps: Vec<(StarOpen, GroupHom)> =
            family.iter().map(|u| (u.clone(), GroupHom::identity(&f.value(u).unwrap()))).collect();
        let arc_group = f.value(&family[2]).unwrap();
        comps[2].1 = GroupHom::scalar(&arc_group, &Int::from(2));
        let j = PrefactorizationMap::new(&f, &f, comps).unwrap();
        let v = check_prefactorization_morphism(&j, &configs).unwrap();
        assert!(!v.ok);
        assert!(v.counterexample.unwrap().starts_with("configuration 0"));
    }

    #[test]
    fn family_must_be_closed() {
        let (f, family, configs) = setup();
        let j = PrefactorizationMap::scalar(&f, &family[..3], &Int::from(1)).unwrap();
        assert!(matches!(check_prefactorization_morphism(&j, &configs), Err(Error::Validation(_))));
    }
}
