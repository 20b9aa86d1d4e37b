use serde::Serialize;

use super::SingleParticleEnergies;
use crate::error::{Error, Result};

/// Largest number of single-particle energies expanded into a full spectrum.
pub const MAX_EXPANDED_MODES: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumLevel {
    pub energy: f64,
    pub degeneracy: u128,
}

/// All `+-e_1 +- ... +- e_a` for `n` qubits, each pattern carrying
/// degeneracy `2^(n - a)`. Coinciding values are merged.
pub fn free_spectrum(e: &SingleParticleEnergies, n: usize) -> Result<Vec<SpectrumLevel>> {
    let energies = e.energies();
    let a = energies.len();
    if a > n {
        return Err(Error::AlphaExceedsQubits { alpha: a, n });
    }
    if a > MAX_EXPANDED_MODES || n - a >= 127 {
        return Err(Error::InvalidArgument(format!("spectrum with {a} modes on {n} qubits is too large to list")));
    }
    let base: u128 = 1 << (n - a);
    let scale: f64 = energies.iter().sum::<f64>().max(1.0);
    let mut values: Vec<f64> = (0u64..1 << a)
        .map(|mask| energies.iter().enumerate().map(|(j, &v)| if mask >> j & 1 == 1 { v } else { -v }).sum())
        .collect();
    values.sort_by(f64::total_cmp);
    let mut out: Vec<SpectrumLevel> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some(l) if (v - l.energy).abs() <= 1e-9 * scale => l.degeneracy += base,
            _ => out.push(SpectrumLevel { energy: v, degeneracy: base }),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indpoly::EnergyLevel;

    fn energies(v: &[(f64, usize)]) -> SingleParticleEnergies {
        SingleParticleEnergies {
            levels: v.iter().map(|&(energy, multiplicity)| EnergyLevel { energy, multiplicity }).collect(),
            residual: 0.0,
        }
    }

    #[test]
    fn two_modes_on_three_qubits() {
        let s = free_spectrum(&energies(&[(1.0, 1), (2.0, 1)]), 3).unwrap();
        let got: Vec<_> = s.iter().map(|l| (l.energy, l.degeneracy)).collect();
        assert_eq!(got, vec![(-3.0, 2), (-1.0, 2), (1.0, 2), (3.0, 2)]);
    }

    #[test]
    fn repeated_energies_merge() {
        let s = free_spectrum(&energies(&[(1.0, 2)]), 2).unwrap();
        let got: Vec<_> = s.iter().map(|l| (l.energy, l.degeneracy)).collect();
        assert_eq!(got, vec![(-2.0, 1), (0.0, 2), (2.0, 1)]);
    }

    #[test]
    fn too_many_modes() {
        assert!(matches!(free_spectrum(&energies(&[(1.0, 3)]), 2), Err(Error::AlphaExceedsQubits { .. })));
    }
}
