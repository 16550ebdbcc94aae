//! Shared helpers for the integration suites.

#![allow(dead_code)]

/// Distance in representable values between two finite f64 of the same sign
/// region; saturates at u64::MAX for NaN or mixed infinite input.
pub fn ulps_between(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    if !a.is_finite() || !b.is_finite() {
        return u64::MAX;
    }
    let key = |x: f64| {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i64::MIN.wrapping_add(bits.wrapping_neg())
        } else {
            bits
        }
    };
    key(a).abs_diff(key(b))
}

pub mod xorshift {
    /// Small deterministic generator for reproducible test data.
    pub struct XorShift(u64);

    impl XorShift {
        pub fn new(seed: u64) -> Self {
            XorShift(seed.max(1))
        }

        pub fn next_u64(&mut self) -> u64 {
            let mut x = self.0;
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            self.0 = x;
            x
        }

        pub fn unit(&mut self) -> f64 {
            (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
        }

        pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
            lo + (hi - lo) * self.unit()
        }
    }
}

pub mod rational {
    /// Exact fraction over i128 for the linear-weight identities.
    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Frac {
        num: i128,
        den: i128,
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    impl Frac {
        pub fn new(num: i128, den: i128) -> Self {
            assert!(den != 0);
            let sign = if den < 0 { -1 } else { 1 };
            let g = gcd(num, den).max(1);
            Frac {
                num: sign * num / g,
                den: sign * den / g,
            }
        }

        pub fn mul(self, other: Frac) -> Frac {
            Frac::new(self.num * other.num, self.den * other.den)
        }

        pub fn sub(self, other: Frac) -> Frac {
            Frac::new(
                self.num * other.den - other.num * self.den,
                self.den * other.den,
            )
        }
    }
}
