//! Two-port transmission (ABCD) matrices, scattering conversion, and ladder
//! frequency responses at real or complex Laplace frequency.

use num_complex::Complex;

use crate::element::{ComplexFrequency, Element, Ladder};
use crate::error::{Error, Result};
use crate::scalar::{cplx, finite, Scalar};

/// 2x2 transmission matrix relating (V1, I1) to (V2, I2); multiplicative
/// under cascade, det = 1 for reciprocal networks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Abcd<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

impl<T: Scalar> Abcd<T> {
    pub fn identity() -> Self {
        Self { a: cplx(1.0, 0.0), b: cplx(0.0, 0.0), c: cplx(0.0, 0.0), d: cplx(1.0, 0.0) }
    }

    /// Series impedance `z` in the through path.
    pub fn series(z: Complex<T>) -> Self {
        Self { a: cplx(1.0, 0.0), b: z, c: cplx(0.0, 0.0), d: cplx(1.0, 0.0) }
    }

    /// Shunt admittance `y` to ground.
    pub fn shunt(y: Complex<T>) -> Self {
        Self { a: cplx(1.0, 0.0), b: cplx(0.0, 0.0), c: y, d: cplx(1.0, 0.0) }
    }

    pub fn det(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    pub fn is_finite(&self) -> bool {
        finite(self.a) && finite(self.b) && finite(self.c) && finite(self.d)
    }

    /// Matrix product `self * rhs`: `self` on the port-1 side, `rhs` toward
    /// the port-2 side.
    pub fn cascade(&self, rhs: &Self) -> Self {
        Self {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// Converts to S-parameters with equal real reference impedance `z0`.
    pub fn to_s(&self, z0: T) -> Result<Sparams<T>> {
        let z0c = Complex::new(z0, T::zero());
        let den = self.a + self.b / z0c + self.c * z0c + self.d;
        if den.norm() == T::zero() || !finite(den) {
            return Err(Error::ConversionDegenerate);
        }
        Ok(Sparams {
            s11: (self.a + self.b / z0c - self.c * z0c - self.d) / den,
            s12: (self.det() + self.det()) / den,
            s21: cplx::<T>(2.0, 0.0) / den,
            s22: (-self.a + self.b / z0c - self.c * z0c + self.d) / den,
        })
    }

    /// Inverse of [`Abcd::to_s`]; requires `s21 != 0`.
    pub fn from_s(s: &Sparams<T>, z0: T) -> Result<Self> {
        if s.s21.norm() == T::zero() {
            return Err(Error::ConversionDegenerate);
        }
        let one = cplx::<T>(1.0, 0.0);
        let z0c = Complex::new(z0, T::zero());
        let den = s.s21 + s.s21;
        Ok(Self {
            a: ((one + s.s11) * (one - s.s22) + s.s12 * s.s21) / den,
            b: z0c * ((one + s.s11) * (one + s.s22) - s.s12 * s.s21) / den,
            c: ((one - s.s11) * (one - s.s22) - s.s12 * s.s21) / (z0c * den),
            d: ((one - s.s11) * (one + s.s22) + s.s12 * s.s21) / den,
        })
    }
}

/// Scattering parameters of a two-port at one frequency, single real
/// reference impedance on both ports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sparams<T> {
    pub s11: Complex<T>,
    pub s12: Complex<T>,
    pub s21: Complex<T>,
    pub s22: Complex<T>,
}

/// ABCD matrix of a single element at complex frequency `s`.
///
/// Lines and stubs use the hyperbolic continuation of the real-frequency
/// trigonometric forms, so `s = j*omega` reproduces the Fourier response
/// bit for bit. Shunt elements have B = 0, series elements have C = 0.
pub fn abcd_of_element<T: Scalar>(e: &Element<T>, s: ComplexFrequency<T>) -> Result<Abcd<T>> {
    e.validate()?;
    let sc = s.as_complex();
    let m = match *e {
        Element::TransmissionLine { z0, delay } => {
            let theta = sc * delay;
            let ch = theta.cosh();
            let sh = theta.sinh();
            Abcd { a: ch, b: sh * z0, c: sh / z0, d: ch }
        }
        _ => {
            if let Some(z) = e.series_impedance(sc) {
                Abcd::series(z)
            } else {
                let y = e.shunt_admittance(sc).expect("element is series, shunt, or line");
                Abcd::shunt(y)
            }
        }
    };
    if m.is_finite() {
        Ok(m)
    } else {
        Err(Error::ElementSingularity { kind: e.kind() })
    }
}

/// Cascade of two ABCD matrices (associative matrix product).
pub fn cascade<T: Scalar>(a: &Abcd<T>, b: &Abcd<T>) -> Abcd<T> {
    a.cascade(b)
}

/// A coupling network's frequency response: a ladder evaluated against a
/// fixed reference impedance. Immutable, safe to evaluate concurrently.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPortResponse<T> {
    ladder: Ladder<T>,
    z0: T,
}

impl<T: Scalar> TwoPortResponse<T> {
    pub fn new(ladder: Ladder<T>, z0: T) -> Self {
        Self { ladder, z0 }
    }

    pub fn z0(&self) -> T {
        self.z0
    }

    pub fn ladder(&self) -> &Ladder<T> {
        &self.ladder
    }

    /// Full ABCD matrix from the outer port toward the dipole side.
    pub fn abcd(&self, s: ComplexFrequency<T>) -> Result<Abcd<T>> {
        let mut m = Abcd::identity();
        for e in self.ladder.elements() {
            m = m.cascade(&abcd_of_element(e, s)?);
        }
        Ok(m)
    }

    /// Scattering parameters at `s`; port 1 = outer, port 2 = dipole side.
    pub fn s_matrix(&self, s: ComplexFrequency<T>) -> Result<Sparams<T>> {
        self.abcd(s)?.to_s(self.z0)
    }

    /// Reflection seen from the dipole side with the outer port matched.
    pub fn dipole_side_reflection(&self, s: ComplexFrequency<T>) -> Result<Complex<T>> {
        Ok(self.s_matrix(s)?.s22)
    }

    /// Transmission outer -> dipole side (equal to the reverse one for these
    /// reciprocal ladders).
    pub fn transmission(&self, s: ComplexFrequency<T>) -> Result<Complex<T>> {
        Ok(self.s_matrix(s)?.s21)
    }

    /// Impedance looking from the dipole terminal into the network with its
    /// outer port terminated in the reference impedance. A full reflection
    /// (`r = 1`) yields an infinite marker value rather than an error.
    pub fn output_impedance(&self, s: ComplexFrequency<T>) -> Result<Complex<T>> {
        let m = self.abcd(s)?;
        let z0c = Complex::new(self.z0, T::zero());
        Ok((m.d * z0c + m.b) / (m.c * z0c + m.a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::jomega;
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::TAU;

    fn at(hz: f64) -> ComplexFrequency<f64> {
        ComplexFrequency::real_freq(TAU * hz)
    }

    #[test]
    fn series_inductor_at_5ghz() {
        // B = j*omega*L by definition.
        let e = Element::SeriesInductor { henries: 1e-9 };
        let m = abcd_of_element(&e, at(5e9)).unwrap();
        assert_relative_eq!(m.a.re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(m.b.im, 31.415926535897932, epsilon = 1e-12);
        assert_eq!(m.b.re, 0.0);
        assert_eq!(m.c, Complex64::new(0.0, 0.0));
        assert_relative_eq!(m.d.re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn shunt_capacitor_is_pure_shunt() {
        let e = Element::ShuntCapacitor { farads: 0.37e-12 };
        let s = ComplexFrequency::new(-2.0e8, TAU * 4.2e9);
        let m = abcd_of_element(&e, s).unwrap();
        assert_eq!(m.b, Complex64::new(0.0, 0.0));
        let sc = s.as_complex();
        assert_relative_eq!(m.c.re, (sc * 0.37e-12).re, epsilon = 1e-25);
        assert_relative_eq!(m.c.im, (sc * 0.37e-12).im, epsilon = 1e-25);
    }

    #[test]
    fn line_matches_discretized_lc_cells() {
        // Oracle: 10_000 series-L/shunt-C cells with L = Z0*delay/N and
        // C = delay/(Z0*N) approach the ideal line response.
        let z0 = 50.0;
        let delay = 50e-12;
        let n = 10_000usize;
        let s = at(5e9);
        let line = abcd_of_element(&Element::TransmissionLine { z0, delay }, s).unwrap();
        let cell_l = abcd_of_element(
            &Element::SeriesInductor { henries: z0 * delay / n as f64 },
            s,
        )
        .unwrap();
        let cell_c = abcd_of_element(
            &Element::ShuntCapacitor { farads: delay / (z0 * n as f64) },
            s,
        )
        .unwrap();
        let cell = cell_l.cascade(&cell_c);
        // Binary exponentiation keeps the oracle cheap at N = 10^4.
        let mut acc = Abcd::<f64>::identity();
        let mut base = cell;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.cascade(&base);
            }
            base = base.cascade(&base);
            k >>= 1;
        }
        for (got, want) in [(acc.a, line.a), (acc.b, line.b), (acc.c, line.c), (acc.d, line.d)] {
            assert!(
                (got - want).norm() <= 1e-4 * want.norm().max(1.0),
                "cell cascade {got} vs line {want}"
            );
        }
    }

    #[test]
    fn element_singularity_is_reported() {
        // Open stub a quarter wave long: tanh(j*pi/2) diverges.
        let delay = 25e-12;
        let e = Element::OpenStub { z0: 40.0, delay };
        let omega = (std::f64::consts::PI / 2.0) / delay;
        let err = abcd_of_element(&e, ComplexFrequency::real_freq(omega)).unwrap_err();
        assert!(matches!(err, Error::ElementSingularity { kind: "open_stub" }));
    }

    #[test]
    fn identity_through_s_matrix() {
        let s = Abcd::<f64>::identity().to_s(50.0).unwrap();
        assert_relative_eq!(s.s11.norm(), 0.0, epsilon = 1e-15);
        assert_relative_eq!(s.s21.re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(s.s12.re, 1.0, epsilon = 1e-15);
        assert_relative_eq!(s.s22.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn series_z0_splits_one_third_two_thirds() {
        let s = Abcd::series(Complex64::new(50.0, 0.0)).to_s(50.0).unwrap();
        assert_relative_eq!(s.s11.re, 1.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(s.s21.re, 2.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn matched_line_output_impedance_is_z0() {
        let ladder =
            Ladder::new(vec![Element::TransmissionLine { z0: 50.0, delay: 37e-12 }]).unwrap();
        let net = TwoPortResponse::new(ladder, 50.0);
        let z = net.output_impedance(at(5.1e9)).unwrap();
        assert_relative_eq!(z.re, 50.0, epsilon = 1e-10);
        assert_relative_eq!(z.im, 0.0, epsilon = 1e-10);
    }

    #[test]
    fn shunt_cap_output_impedance_closed_form() {
        let c = 0.8e-12;
        let ladder = Ladder::new(vec![Element::ShuntCapacitor { farads: c }]).unwrap();
        let net = TwoPortResponse::new(ladder, 50.0);
        let s = at(6.3e9);
        let z = net.output_impedance(s).unwrap();
        let zc = (s.as_complex() * c).finv();
        let want = zc * 50.0 / (zc + 50.0);
        assert_relative_eq!(z.re, want.re, epsilon = 1e-12);
        assert_relative_eq!(z.im, want.im, epsilon = 1e-12);
    }

    #[test]
    fn laplace_axis_matches_fourier_axis_bitwise() {
        let ladder = Ladder::new(vec![
            Element::SeriesInductor { henries: 2.2e-9 },
            Element::OpenStub { z0: 31.0, delay: 24e-12 },
            Element::TransmissionLine { z0: 64.0, delay: 18e-12 },
            Element::ShuntCapacitor { farads: 0.41e-12 },
        ])
        .unwrap();
        let net = TwoPortResponse::new(ladder, 50.0);
        let omega = TAU * 7.3e9;
        let a = net.abcd(ComplexFrequency::real_freq(omega)).unwrap();
        let b = net.abcd(ComplexFrequency::from_complex(jomega(omega))).unwrap();
        assert_eq!(a, b);
    }
}
