use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::pc::PcPresentation;
use crate::zlinalg::{AbelianStructure, Cokernel};

/// Structure of `R/[R,F]` for the presentation, from the tails of all
/// consistency overlaps. Its free rank is the number of generators.
pub fn tails_module(p: &PcPresentation) -> Result<AbelianStructure> {
    let m = p.relation_count();
    let mut rows = Vec::new();
    let mut inconsistent = 0;
    for o in p.overlaps() {
        let (l, r) = p.evaluate_overlap(o, true)?;
        if l.exps != r.exps {
            inconsistent += 1;
            continue;
        }
        let row: Vec<(usize, BigInt)> = l
            .tails
            .iter()
            .zip(&r.tails)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(k, (a, b))| (k, BigInt::from(a - b)))
            .collect();
        rows.push(row);
    }
    if inconsistent > 0 {
        return Err(Error::Inconsistent(inconsistent));
    }
    Ok(Cokernel::new(m, rows).structure().clone())
}

/// Schur multiplier by the tails method.
pub fn multiplier_pc_tails(p: &PcPresentation) -> Result<AbelianStructure> {
    let module = tails_module(p)?;
    if module.free_rank() != p.len() {
        return Err(Error::RankMismatch {
            expected: p.len(),
            found: module.free_rank(),
        });
    }
    Ok(module.torsion_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::presentation_from_strings;

    #[test]
    fn cyclic_four() {
        let p = presentation_from_strings(&["a", "b"], &[2, 2], &[("a", "b")], &[]).unwrap();
        assert!(multiplier_pc_tails(&p).unwrap().is_trivial());
        let z4 = presentation_from_strings(&["a"], &[4], &[], &[]).unwrap();
        assert!(multiplier_pc_tails(&z4).unwrap().is_trivial());
    }

    #[test]
    fn heisenberg_three() {
        let p =
            presentation_from_strings(&["g1", "g2", "g3"], &[3, 3, 3], &[], &[("g2", "g1", "g3")])
                .unwrap();
        assert_eq!(multiplier_pc_tails(&p).unwrap().torsion_u64(), vec![3, 3]);
        assert_eq!(tails_module(&p).unwrap().free_rank(), 3);
    }

    #[test]
    fn elementary_abelian() {
        let p = presentation_from_strings(&["a", "b", "c"], &[2, 2, 2], &[], &[]).unwrap();
        assert_eq!(
            multiplier_pc_tails(&p).unwrap().torsion_u64(),
            vec![2, 2, 2]
        );
    }

    #[test]
    fn quaternion_and_dihedral() {
        let q8 = presentation_from_strings(
            &["a", "b", "z"],
            &[2, 2, 2],
            &[("a", "z"), ("b", "z")],
            &[("b", "a", "z")],
        )
        .unwrap();
        assert!(multiplier_pc_tails(&q8).unwrap().is_trivial());
        let d4 = presentation_from_strings(&["a", "b", "z"], &[2, 2, 2], &[], &[("b", "a", "z")])
            .unwrap();
        assert_eq!(multiplier_pc_tails(&d4).unwrap().torsion_u64(), vec![2]);
    }

    #[test]
    fn inconsistent_rejected() {
        let p =
            presentation_from_strings(&["g1", "g2"], &[2, 2], &[], &[("g2", "g1", "g2")]).unwrap();
        assert!(matches!(
            multiplier_pc_tails(&p),
            Err(Error::Inconsistent(_))
        ));
    }
}
