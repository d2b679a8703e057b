use super::Element;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn gcd_of(gens: &[Element]) -> u64 {
    gens.iter().fold(0, |acc, g| match g {
        Element::Integer(n) => gcd(acc, n.unsigned_abs()),
        _ => unreachable!("validated by caller"),
    })
}

pub(crate) fn divides(modulus: u64, n: i64) -> bool {
    if modulus == 0 {
        n == 0
    } else {
        n.unsigned_abs().is_multiple_of(modulus)
    }
}

/// `1 + max |x|` over the excluded set (1 when empty): no non-zero `x` with
/// `|x| < n` is a multiple of `n`.
pub(crate) fn separating_modulus(excluded: &[Element]) -> i64 {
    1 + excluded
        .iter()
        .map(|x| match x {
            Element::Integer(n) => n.unsigned_abs() as i64,
            _ => unreachable!("validated by caller"),
        })
        .max()
        .unwrap_or(0)
}
