use alloc::vec::Vec;

use crate::algebra::HalfInteger;
use crate::linalg::{spectral_components, SymmetricMatrix};
use crate::spin::SystemShape;
use crate::{Error, Result};

/// Largest register the dense oracle accepts.
pub const ORACLE_MAX_SITES: u32 = 14;

/// Weight of the initial product state in each total-spin sector, from a full
/// eigendecomposition of the dense `S^2` matrix on the fixed-magnetization
/// subspace. Sectors run from `S = |m|` to `mu/2`.
pub fn brute_force_sector_weights(shape: SystemShape) -> Result<Vec<(HalfInteger, f64)>> {
    let mu = shape.mu();
    if mu > ORACLE_MAX_SITES {
        return Err(Error::Capacity {
            mu,
            limit: ORACLE_MAX_SITES,
        });
    }
    let ups = shape.m();
    let basis: Vec<u32> = (0u32..1 << mu).filter(|b| b.count_ones() == ups).collect();
    let index_of = |b: u32| basis.binary_search(&b).expect("swap preserves magnetization");

    // S^2 = 3 mu / 4 + sum_{i<j} (4 z_i z_j / 2 + swap_ij for antiparallel pairs)
    let mut s2 = SymmetricMatrix::zeros(basis.len());
    for (row, &b) in basis.iter().enumerate() {
        let mut diagonal = 0.75 * f64::from(mu);
        for i in 0..mu {
            for j in i + 1..mu {
                let zi = (b >> i) & 1;
                let zj = (b >> j) & 1;
                if zi == zj {
                    diagonal += 0.5;
                } else {
                    diagonal -= 0.5;
                    let swapped = b ^ (1 << i) ^ (1 << j);
                    let col = index_of(swapped);
                    if col < row {
                        s2.set(row, col, 1.0);
                    }
                }
            }
        }
        s2.set(row, row, diagonal);
    }

    let initial = (1u32 << shape.m()) - 1;
    let mut vector = alloc::vec![0.0; basis.len()];
    vector[index_of(initial)] = 1.0;

    let twice_m = shape.initial_m().twice();
    let lowest = twice_m.abs();
    let sectors: Vec<HalfInteger> = (lowest..=i64::from(mu)).step_by(2).map(HalfInteger::from_twice).collect();
    let mut weights: Vec<(HalfInteger, f64)> = sectors.iter().map(|&s| (s, 0.0)).collect();

    for part in spectral_components(s2, &vector)? {
        // S(S+1) = lambda  =>  2S = sqrt(4 lambda + 1) - 1
        let twice_s = libm::sqrt(4.0 * part.eigenvalue + 1.0) - 1.0;
        let nearest = libm::round(twice_s) as i64;
        let slot = usize::try_from((nearest - lowest) / 2)
            .ok()
            .filter(|_| nearest >= lowest && (nearest - lowest) % 2 == 0)
            .and_then(|k| weights.get_mut(k).map(|w| (k, w)));
        let Some((_, weight)) = slot else {
            return Err(Error::Contract(alloc::format!(
                "eigenvalue {} is not S(S+1) for an allowed S",
                part.eigenvalue
            )));
        };
        let s = weight.0.to_f64();
        if (part.eigenvalue - s * (s + 1.0)).abs() > 1e-8 {
            return Err(Error::Contract(alloc::format!(
                "eigenvalue {} is not S(S+1) for an allowed S",
                part.eigenvalue
            )));
        }
        weight.1 += part.component * part.component;
    }
    Ok(weights)
}
