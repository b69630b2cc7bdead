use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// In-place iterative radix-2 forward DFT, `X[k] = sum x[n] e^{-2 pi i k n / N}`.
pub fn fft_in_place(data: &mut [Complex64]) -> Result<()> {
    let n = data.len();
    if !n.is_power_of_two() {
        return Err(Error::FftNotPowerOfTwo(n));
    }
    if n <= 1 {
        return Ok(());
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let step = -2.0 * PI / len as f64;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                // per-butterfly twiddle keeps rounding error O(eps log n)
                let ang = step * k as f64;
                let w = Complex64::new(libm::cos(ang), libm::sin(ang));
                let a = data[start + k];
                let b = data[start + k + half] * w;
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    #[test]
    fn impulse_is_flat() {
        let mut x = vec![Complex64::new(0.0, 0.0); 8];
        x[0] = Complex64::new(1.0, 0.0);
        fft_in_place(&mut x).unwrap();
        assert!(x.iter().all(|v| (v.re - 1.0).abs() < 1e-15 && v.im.abs() < 1e-15));
    }

    #[test]
    fn rejects_non_power_of_two() {
        let mut x: Vec<Complex64> = vec![Complex64::new(0.0, 0.0); 6];
        assert_eq!(fft_in_place(&mut x), Err(Error::FftNotPowerOfTwo(6)));
    }
}
