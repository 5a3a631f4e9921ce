use num_integer::Integer;

use super::group::{prime_power, GroupSet};
use super::matrix::ModMatrix;
use super::GroupError;

#[derive(Debug, Clone)]
pub struct KernelReport {
    pub n: usize,
    pub l: u64,
    pub m: u32,
    /// Kernel of reduction `SL_n(Z/l^m) → SL_n(Z/l)`.
    pub kernel: GroupSet,
    pub abelian: bool,
    /// Least common multiple of element orders.
    pub exponent: u64,
    /// Two generators that fail to commute, when the kernel is non-abelian.
    pub non_commuting_pair: Option<(ModMatrix, ModMatrix)>,
}

/// The congruence kernel, enumerated directly as `{I + l·X : det = 1}`.
///
/// Abelianness is decided by testing every pair of a generating set, which
/// is equivalent to testing every pair of elements.
pub fn congruence_kernel(n: usize, l: u64, m: u32, cap: usize) -> Result<KernelReport, GroupError> {
    if n == 0 {
        return Err(GroupError::Precondition("n must be positive".into()));
    }
    let modulus = prime_power(l, m)?;
    let expected = (l as u128).checked_pow((m - 1) * (n * n - 1) as u32);
    if expected.is_none_or(|e| e > cap as u128) {
        return Err(GroupError::CapExceeded { cap });
    }

    let lift = modulus / l; // l^{m-1}
    let cells = n * n;
    let total = (lift as u128).pow(cells as u32);
    let mut elements = Vec::new();
    let mut digits = vec![0u64; cells];
    for _ in 0..total {
        let entries: Vec<u64> = (0..cells)
            .map(|c| {
                let diag = u64::from(c / n == c % n);
                (diag + l * digits[c]) % modulus
            })
            .collect();
        let g = ModMatrix::new(n, modulus, entries)?;
        if g.det() == 1 % modulus {
            elements.push(g);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < lift {
                break;
            }
            *d = 0;
        }
    }

    let kernel = GroupSet::from_parts(elements, Vec::new());
    let gens = kernel.generators();
    let mut witness = None;
    'outer: for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.mul(b) != b.mul(a) {
                witness = Some((a.clone(), b.clone()));
                break 'outer;
            }
        }
    }
    let bound = kernel.order() as u64;
    let exponent = kernel
        .elements()
        .iter()
        .map(|g| g.order(bound).expect("finite group element"))
        .fold(1u64, |acc, o| acc.lcm(&o));

    Ok(KernelReport {
        n,
        l,
        m,
        abelian: witness.is_none(),
        kernel,
        exponent,
        non_commuting_pair: witness,
    })
}
