//! Exact binomial coefficients with the vacuous conventions the Betti and
//! Hilbert formulas rely on.

/// `C(n, k)`, zero whenever `k < 0`, `k > n` or `n < 0`.
///
/// Panics on `u128` overflow, which no desk-scale input reaches.
pub fn binomial(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after multiplication
        acc = acc
            .checked_mul(n - i)
            .expect("binomial coefficient overflow")
            / (i + 1);
    }
    acc
}

/// Same as [`binomial`] narrowed to `u64`.
pub fn binom_u64(n: i64, k: i64) -> u64 {
    u64::try_from(binomial(n, k)).expect("binomial coefficient exceeds u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<u128>> {
        let mut rows = vec![vec![1u128]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![1u128; i + 1];
            for j in 1..i {
                row[j] = prev[j - 1] + prev[j];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn agrees_with_pascal_triangle() {
        let rows = pascal(60);
        for (n, row) in rows.iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                assert_eq!(binomial(n as i64, k as i64), v, "C({n},{k})");
            }
        }
    }

    #[test]
    fn vacuous_cases_are_zero() {
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(3, -1), 0);
        assert_eq!(binomial(-2, 0), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
