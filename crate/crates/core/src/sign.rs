/// `(-1)^x`, decided by the parity of the nonnegative residue of `x`.
#[inline]
pub(crate) fn neg_one_pow(x: i64) -> i64 {
    if x.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::neg_one_pow;

    #[test]
    fn parity_of_negative_exponents() {
        assert_eq!(neg_one_pow(0), 1);
        assert_eq!(neg_one_pow(-1), -1);
        assert_eq!(neg_one_pow(-4), 1);
        assert_eq!(neg_one_pow(7), -1);
    }
}
