use num_bigint::BigInt;

use crate::abelian::{in_column_lattice, DiagGroup, FgAbGroup, IntMatrix, PresentedGroup};
use crate::complexes::{sign, CochainComplex, ComplexError};
use crate::dualcomplex::{coboundary_complex, DualComplex};

use super::{ChowError, HypothesisFailure, MixedGroup, ResolutionData};

/// Codimension-one higher Chow groups of a smooth projective variety with
/// `pi0` connected components: units in degree 1, Picard group in degree 0.
pub fn ch1_smooth(pi0: usize, pic: &FgAbGroup, m: i64) -> MixedGroup {
    match m {
        1 => MixedGroup::torus(DiagGroup::torus(pi0), "global units"),
        0 => MixedGroup::discrete(pic.clone(), "Picard group"),
        _ => MixedGroup::trivial(),
    }
}

/// The units row: the cochain complex of `Γ`, read as character lattices.
/// Needs every intersection to be irreducible.
pub fn units_row(gamma: &DualComplex) -> Result<CochainComplex, ChowError> {
    if !(gamma.all_irreducible() && gamma.is_simplicial()) {
        return Err(ChowError::HypothesisFailed(Box::new(HypothesisFailure {
            reason: "the units row needs irreducible intersections".into(),
            checklist: Vec::new(),
            e2: Vec::new(),
        })));
    }
    Ok(coboundary_complex(gamma))
}

/// The Picard row: `⊕ Pic(t-strata)` in degree `t`, differential the
/// alternating sum of restrictions.
pub fn pic_row(data: &ResolutionData) -> Result<CochainComplex, ChowError> {
    let gamma = data.gamma();
    let pic = data.pic();
    let top = gamma.dimension().expect("validated divisor is nonempty");
    let offsets = |t: usize| -> Vec<usize> {
        let mut off = 0;
        gamma
            .cells(t)
            .iter()
            .map(|c| {
                let o = off;
                off += pic.generators(&c.id);
                o
            })
            .collect()
    };
    let terms: Vec<PresentedGroup> = (0..=top)
        .map(|t| {
            let parts: Vec<PresentedGroup> = gamma.cells(t).iter().map(|c| pic.group(&c.id)).collect();
            PresentedGroup::direct_sum(&parts)
        })
        .collect();
    let mut diffs = Vec::with_capacity(top);
    for t in 0..top {
        let (src, tgt) = (offsets(t), offsets(t + 1));
        let mut m = IntMatrix::zeros(terms[t + 1].generators(), terms[t].generators());
        for (r, tau) in gamma.cells(t + 1).iter().enumerate() {
            for (j, &f) in tau.faces.iter().enumerate() {
                let face = &gamma.cells(t)[f].id;
                let res = pic
                    .restriction(face, &tau.id)
                    .expect("validated data has every restriction");
                m.add_block(tgt[r], src[f], &res.scale(&BigInt::from(sign(j as i64))));
            }
        }
        diffs.push(m);
    }
    CochainComplex::new(0, terms, diffs).map_err(|e| match e {
        ComplexError::NotAComplex { degree } => ChowError::D1NotComplex { degree },
        other => ChowError::Consistency(other.to_string()),
    })
}

/// `Pic(X~)` in degree `-1` followed by the Picard row.
pub(crate) fn augmented_pic_row(
    data: &ResolutionData,
    pic_resolution: &PresentedGroup,
    restriction: &IntMatrix,
) -> Result<CochainComplex, ChowError> {
    let row = pic_row(data)?;
    let components = row.term(0);
    if restriction.shape() != (components.generators(), pic_resolution.generators()) {
        return Err(ChowError::ShapeMismatch(format!(
            "restriction to the components is {}x{}, expected {}x{}",
            restriction.rows(),
            restriction.cols(),
            components.generators(),
            pic_resolution.generators()
        )));
    }
    if !in_column_lattice(components.relations(), &(restriction * pic_resolution.relations())) {
        return Err(ChowError::Consistency(
            "restriction to the components does not respect the relations of Pic(X~)".into(),
        ));
    }
    let mut terms = vec![pic_resolution.clone()];
    terms.extend(row.terms().iter().cloned());
    let mut diffs = vec![restriction.clone()];
    diffs.extend(row.degrees().take(row.len().saturating_sub(1)).map(|t| row.differential(t)));
    CochainComplex::new(-1, terms, diffs).map_err(|e| match e {
        ComplexError::NotAComplex { degree } => ChowError::D1NotComplex { degree },
        other => ChowError::Consistency(other.to_string()),
    })
}
