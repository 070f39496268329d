//! Small groups and 3-cocycles used throughout the examples and tests.

use std::sync::Arc;

use crate::cocycle::ThreeCocycle;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Named groups: `Z<n>`, `S<n>` (n ≤ 5), `D<n>` (order 2n), `Q8`, `V4`, `1`.
pub fn named_group(name: &str) -> Result<FiniteGroup> {
    let bad = || Error::input("group", format!("unknown group name `{name}`"));
    let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n >= 1);
    match name {
        "1" => Ok(FiniteGroup::trivial()),
        "Q8" => Ok(FiniteGroup::quaternion()),
        "V4" => {
            let c2 = FiniteGroup::cyclic(2);
            Ok(FiniteGroup::direct_product(&c2, &c2))
        }
        _ => {
            let (head, tail) = name.split_at(1);
            let n = num(tail).ok_or_else(bad)?;
            match head {
                "Z" => Ok(FiniteGroup::cyclic(n)),
                "S" if n <= 5 => Ok(FiniteGroup::symmetric(n)),
                "D" => Ok(FiniteGroup::dihedral(n)),
                _ => Err(bad()),
            }
        }
    }
}

/// Sign of each element of a permutation group, as 0 or 1.
pub fn permutation_sign(group: &FiniteGroup) -> Option<Vec<usize>> {
    group
        .elements()
        .map(|g| {
            let p = group.permutation(g)?;
            let inversions = (0..p.len())
                .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            Some(inversions % 2)
        })
        .collect()
}

/// The nontrivial ℤ/2 cocycle pulled back to S₃ along the sign map.
pub fn s3_sign_omega() -> ThreeCocycle {
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let sign = permutation_sign(&s3).expect("S3 is a permutation group");
    ThreeCocycle::cyclic(2, 1).pullback(s3, &sign).expect("sign is a homomorphism")
}

/// All shipped ω fixtures: ℤ/2 (p = 0, 1), ℤ/4 (p = 0..3) and the S₃
/// sign pullback, each with a short name.
pub fn omega_fixtures() -> Vec<(String, ThreeCocycle)> {
    let mut out: Vec<(String, ThreeCocycle)> = Vec::new();
    for p in 0..2 {
        out.push((format!("Z2/p={p}"), ThreeCocycle::cyclic(2, p)));
    }
    for p in 0..4 {
        out.push((format!("Z4/p={p}"), ThreeCocycle::cyclic(4, p)));
    }
    out.push(("S3/sign".into(), s3_sign_omega()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(named_group("S3").unwrap().order(), 6);
        assert_eq!(named_group("D4").unwrap().order(), 8);
        assert_eq!(named_group("Z6").unwrap().order(), 6);
        assert_eq!(named_group("V4").unwrap().exponent(), 2);
        assert!(named_group("S9").is_err());
        assert!(named_group("X3").is_err());
        assert!(named_group("Z0").is_err());
    }

    #[test]
    fn sign_of_s3() {
        let s3 = FiniteGroup::symmetric(3);
        let sign = permutation_sign(&s3).unwrap();
        assert_eq!(sign.iter().filter(|&&s| s == 1).count(), 3);
        assert!(permutation_sign(&FiniteGroup::cyclic(3)).is_none());
    }
}
