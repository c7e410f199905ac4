//! Frequency-domain nodal analysis over arbitrary element graphs.
//!
//! This is the independent cross-check path for every composition formula in
//! the toolkit: S-parameters come from a direct admittance-matrix solve with
//! Norton port terminations, never from ABCD cascading. A two-tone variant
//! solves the pumped dipole's coupled signal/idler response for the
//! brute-force gain checks. Used in tests and acceptance cross-checks.

use num_complex::Complex;

use crate::element::{Element, Ladder};
use crate::error::{Error, Result};
use crate::scalar::{finite, real, Scalar};

/// Node index; 0 is ground.
pub type Node = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
enum BranchKind<T> {
    Resistor(T),
    Inductor(T),
    Capacitor(T),
    /// Frequency-independent complex admittance (used to insert pumped
    /// reflection loads).
    Fixed(Complex<T>),
    OpenStub { z0: T, delay: T },
    ShortStub { z0: T, delay: T },
    Line { z0: T, delay: T },
}

impl<T: Scalar> BranchKind<T> {
    fn two_terminal_admittance(&self, s: Complex<T>) -> Result<Option<Complex<T>>> {
        let y = match *self {
            Self::Resistor(r) => Complex::new(r.recip(), T::zero()),
            Self::Inductor(l) => (s * l).finv(),
            Self::Capacitor(c) => s * c,
            Self::Fixed(y) => y,
            Self::OpenStub { z0, delay } => (s * delay).tanh() / z0,
            Self::ShortStub { z0, delay } => ((s * delay).tanh() * z0).finv(),
            Self::Line { .. } => return Ok(None),
        };
        if finite(y) {
            Ok(Some(y))
        } else {
            Err(Error::ElementSingularity { kind: "branch" })
        }
    }
}

/// Port defined between a node pair with a real reference impedance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Port<T> {
    pub pos: Node,
    pub neg: Node,
    pub z0: T,
}

/// Element graph with port definitions, solvable at any complex frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit<T> {
    node_count: usize,
    branches: Vec<(Node, Node, BranchKind<T>)>,
    ports: Vec<Port<T>>,
}

impl<T: Scalar> Circuit<T> {
    pub fn new() -> Self {
        Self { node_count: 1, branches: Vec::new(), ports: Vec::new() }
    }

    /// Allocates a fresh non-ground node.
    pub fn node(&mut self) -> Node {
        let n = self.node_count;
        self.node_count += 1;
        n
    }

    pub fn resistor(&mut self, a: Node, b: Node, ohms: T) {
        self.branches.push((a, b, BranchKind::Resistor(ohms)));
    }

    pub fn inductor(&mut self, a: Node, b: Node, henries: T) {
        self.branches.push((a, b, BranchKind::Inductor(henries)));
    }

    pub fn capacitor(&mut self, a: Node, b: Node, farads: T) {
        self.branches.push((a, b, BranchKind::Capacitor(farads)));
    }

    pub fn fixed_admittance(&mut self, a: Node, b: Node, y: Complex<T>) {
        self.branches.push((a, b, BranchKind::Fixed(y)));
    }

    pub fn line(&mut self, a: Node, b: Node, z0: T, delay: T) {
        self.branches.push((a, b, BranchKind::Line { z0, delay }));
    }

    pub fn port(&mut self, pos: Node, neg: Node, z0: T) -> usize {
        self.ports.push(Port { pos, neg, z0 });
        self.ports.len() - 1
    }

    pub fn port_count(&self) -> usize {
        self.ports.len()
    }

    /// Appends a ladder starting at `from`, returning the far-end node.
    /// Series elements and lines advance the through node; shunt elements
    /// and stubs hang at the current node.
    pub fn append_ladder(&mut self, from: Node, ladder: &Ladder<T>) -> Result<Node> {
        let mut at = from;
        for e in ladder.elements() {
            match *e {
                Element::SeriesInductor { henries } => {
                    let next = self.node();
                    self.inductor(at, next, henries);
                    at = next;
                }
                Element::SeriesCapacitor { farads } => {
                    let next = self.node();
                    self.capacitor(at, next, farads);
                    at = next;
                }
                Element::SeriesResistor { ohms } => {
                    let next = self.node();
                    self.resistor(at, next, ohms);
                    at = next;
                }
                Element::ShuntInductor { henries } => self.inductor(at, 0, henries),
                Element::ShuntCapacitor { farads } => self.capacitor(at, 0, farads),
                Element::ShuntResistor { ohms } => self.resistor(at, 0, ohms),
                Element::TransmissionLine { z0, delay } => {
                    if delay == T::zero() {
                        return Err(Error::InvalidElement {
                            detail: "zero-delay line is not representable in nodal form".into(),
                        });
                    }
                    let next = self.node();
                    self.line(at, next, z0, delay);
                    at = next;
                }
                Element::OpenStub { z0, delay } => {
                    self.branches.push((at, 0, BranchKind::OpenStub { z0, delay }));
                }
                Element::ShortStub { z0, delay } => {
                    self.branches.push((at, 0, BranchKind::ShortStub { z0, delay }));
                }
            }
        }
        Ok(at)
    }

    fn stamp_two_terminal(
        m: &mut DenseMatrix<T>,
        offset: usize,
        a: Node,
        b: Node,
        y: Complex<T>,
    ) {
        if a != 0 {
            *m.at(offset + a - 1, offset + a - 1) += y;
        }
        if b != 0 {
            *m.at(offset + b - 1, offset + b - 1) += y;
        }
        if a != 0 && b != 0 {
            *m.at(offset + a - 1, offset + b - 1) -= y;
            *m.at(offset + b - 1, offset + a - 1) -= y;
        }
    }

    /// Stamps every branch and port termination at frequency `s` into the
    /// `offset` diagonal block of `m`, conjugating if `conjugate` is set.
    fn stamp_all(
        &self,
        m: &mut DenseMatrix<T>,
        offset: usize,
        s: Complex<T>,
        conjugate: bool,
    ) -> Result<()> {
        let fix = |y: Complex<T>| if conjugate { y.conj() } else { y };
        for &(a, b, kind) in &self.branches {
            match kind {
                BranchKind::Line { z0, delay } => {
                    let sh = (s * delay).sinh();
                    let ch = (s * delay).cosh();
                    let y_self = ch / (sh * z0);
                    let y_mutual = -(sh * z0).finv();
                    if !finite(y_self) || !finite(y_mutual) {
                        return Err(Error::ElementSingularity { kind: "tline" });
                    }
                    let (ys, ym) = (fix(y_self), fix(y_mutual));
                    // Self terms on both nodes, mutual coupling across.
                    if a != 0 {
                        *m.at(offset + a - 1, offset + a - 1) += ys;
                    }
                    if b != 0 {
                        *m.at(offset + b - 1, offset + b - 1) += ys;
                    }
                    if a != 0 && b != 0 {
                        *m.at(offset + a - 1, offset + b - 1) += ym;
                        *m.at(offset + b - 1, offset + a - 1) += ym;
                    }
                }
                _ => {
                    let y = kind
                        .two_terminal_admittance(s)?
                        .expect("non-line branch has a two-terminal admittance");
                    Self::stamp_two_terminal(m, offset, a, b, fix(y));
                }
            }
        }
        for p in &self.ports {
            let y = Complex::new(p.z0.recip(), T::zero());
            Self::stamp_two_terminal(m, offset, p.pos, p.neg, y);
        }
        Ok(())
    }

    fn port_voltage(&self, u: &[Complex<T>], offset: usize, k: usize) -> Complex<T> {
        let p = self.ports[k];
        let vp = if p.pos == 0 { Complex::new(T::zero(), T::zero()) } else { u[offset + p.pos - 1] };
        let vn = if p.neg == 0 { Complex::new(T::zero(), T::zero()) } else { u[offset + p.neg - 1] };
        vp - vn
    }

    /// Full scattering matrix at complex frequency `s`: row = output port,
    /// column = driven port. All ports must share one reference impedance.
    pub fn s_params(&self, s: Complex<T>) -> Result<Vec<Vec<Complex<T>>>> {
        let np = self.ports.len();
        assert!(np > 0, "circuit has no ports");
        let z0 = self.ports[0].z0;
        assert!(
            self.ports.iter().all(|p| p.z0 == z0),
            "equal reference impedance required on all ports"
        );
        let n = self.node_count - 1;
        let mut m = DenseMatrix::zeros(n);
        self.stamp_all(&mut m, 0, s, false)?;

        // One Norton excitation per port: E = 1 behind z0, so the incident
        // wave is E/2 and S_kj = 2*V_k - delta_kj.
        let mut rhs = vec![vec![Complex::new(T::zero(), T::zero()); np]; n];
        for (j, p) in self.ports.iter().enumerate() {
            let i_norton = Complex::new(z0.recip(), T::zero());
            if p.pos != 0 {
                rhs[p.pos - 1][j] += i_norton;
            }
            if p.neg != 0 {
                rhs[p.neg - 1][j] -= i_norton;
            }
        }
        let u = m.solve_multi(rhs)?;

        let two = real::<T>(2.0);
        let mut s_matrix = vec![vec![Complex::new(T::zero(), T::zero()); np]; np];
        for j in 0..np {
            let col: Vec<Complex<T>> = (0..n).map(|i| u[i][j]).collect();
            for k in 0..np {
                let v = self.port_voltage(&col, 0, k);
                s_matrix[k][j] = v * two
                    - if k == j {
                        Complex::new(T::one(), T::zero())
                    } else {
                        Complex::new(T::zero(), T::zero())
                    };
            }
        }
        Ok(s_matrix)
    }
}

impl<T: Scalar> Default for Circuit<T> {
    fn default() -> Self {
        Self::new()
    }
}

/// A ladder with ports on both ends, for oracle comparison against the
/// ABCD cascade path.
pub fn two_port_circuit<T: Scalar>(ladder: &Ladder<T>, z0: T) -> Result<Circuit<T>> {
    let mut c = Circuit::new();
    let n1 = c.node();
    let end = c.append_ladder(n1, ladder)?;
    c.port(n1, 0, z0);
    c.port(end, 0, z0);
    Ok(c)
}

/// The composed series-dipole circuit with the dipole terminal pair exposed.
#[derive(Debug, Clone, PartialEq)]
pub struct ComposedCircuit<T> {
    pub circuit: Circuit<T>,
    /// Signal-side inner node (positive dipole terminal).
    pub node_a: Node,
    /// Pump-side inner node (negative dipole terminal).
    pub node_b: Node,
}

/// Assembles the signal and pump ladders around an open dipole terminal
/// pair. Ports 1 (signal) and 2 (pump) are attached; the dipole pair is
/// left for the caller (third port, load, or pumped dipole).
pub fn composed_circuit<T: Scalar>(
    sig: &Ladder<T>,
    pump: &Ladder<T>,
    z0: T,
) -> Result<ComposedCircuit<T>> {
    let mut c = Circuit::new();
    let p1 = c.node();
    let node_a = c.append_ladder(p1, sig)?;
    let p2 = c.node();
    let node_b = c.append_ladder(p2, pump)?;
    c.port(p1, 0, z0);
    c.port(p2, 0, z0);
    Ok(ComposedCircuit { circuit: c, node_a, node_b })
}

/// Composed circuit with the dipole pair exposed as port 3 (positive
/// terminal on the signal side).
pub fn three_port_circuit<T: Scalar>(
    sig: &Ladder<T>,
    pump: &Ladder<T>,
    z0: T,
) -> Result<Circuit<T>> {
    let mut composed = composed_circuit(sig, pump, z0)?;
    composed.circuit.port(composed.node_a, composed.node_b, z0);
    Ok(composed.circuit)
}

/// Composed circuit with a fixed load admittance bridging the dipole pair;
/// ports 1 and 2 remain. Used to insert the pumped reflection as a load.
pub fn loaded_two_port_circuit<T: Scalar>(
    sig: &Ladder<T>,
    pump: &Ladder<T>,
    z0: T,
    y_load: Complex<T>,
) -> Result<Circuit<T>> {
    let mut composed = composed_circuit(sig, pump, z0)?;
    composed.circuit.fixed_admittance(composed.node_a, composed.node_b, y_load);
    Ok(composed.circuit)
}

/// Result of the brute-force two-tone solve: outgoing waves per port at the
/// signal and idler tones, and the dipole voltages.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoToneSolution<T> {
    /// Outgoing wave amplitude at the signal tone, per port.
    pub signal_out: Vec<Complex<T>>,
    /// Outgoing wave amplitude at the idler tone, per port.
    pub idler_out: Vec<Complex<T>>,
    /// Incident signal wave amplitude at the driven port.
    pub signal_in: Complex<T>,
    pub vj_signal: Complex<T>,
    pub vj_idler: Complex<T>,
}

/// Solves the composed circuit with the pumped dipole bridging the inner
/// terminal pair, driving one external port with a unit signal-tone source.
///
/// `cross` is the dipole's 2x2 cross-admittance relating
/// `(I_s, conj(I_i))` to `(V_s, conj(V_i))`. The network is stamped at
/// `omega_s` for the signal block and conjugate-stamped at `omega_i` for the
/// idler block; the idler tone is unsourced, which embeds the passive idler
/// constraint exactly.
pub fn pumped_two_tone<T: Scalar>(
    sig: &Ladder<T>,
    pump: &Ladder<T>,
    z0: T,
    cross: [[Complex<T>; 2]; 2],
    omega_s: T,
    omega_i: T,
    drive_port: usize,
) -> Result<TwoToneSolution<T>> {
    let composed = composed_circuit(sig, pump, z0)?;
    let circuit = &composed.circuit;
    let n = circuit.node_count - 1;
    let np = circuit.ports.len();
    assert!(drive_port < np);

    let mut m = DenseMatrix::zeros(2 * n);
    let s_sig = Complex::new(T::zero(), omega_s);
    let s_idl = Complex::new(T::zero(), omega_i);
    circuit.stamp_all(&mut m, 0, s_sig, false)?;
    circuit.stamp_all(&mut m, n, s_idl, true)?;

    // Dipole cross stamps across (A, B) in both tone blocks.
    let (a, b) = (composed.node_a, composed.node_b);
    assert!(a != 0 && b != 0, "dipole terminals must be internal nodes");
    for (row_block, row) in [(0usize, 0usize), (n, 1usize)] {
        for (col_block, col) in [(0usize, 0usize), (n, 1usize)] {
            let y = cross[row][col];
            *m.at(row_block + a - 1, col_block + a - 1) += y;
            *m.at(row_block + a - 1, col_block + b - 1) -= y;
            *m.at(row_block + b - 1, col_block + a - 1) -= y;
            *m.at(row_block + b - 1, col_block + b - 1) += y;
        }
    }

    let mut rhs = vec![vec![Complex::new(T::zero(), T::zero()); 1]; 2 * n];
    let p = circuit.ports[drive_port];
    let i_norton = Complex::new(p.z0.recip(), T::zero());
    if p.pos != 0 {
        rhs[p.pos - 1][0] += i_norton;
    }
    if p.neg != 0 {
        rhs[p.neg - 1][0] -= i_norton;
    }
    let u = m.solve_multi(rhs)?;
    let col: Vec<Complex<T>> = (0..2 * n).map(|i| u[i][0]).collect();

    let half = real::<T>(0.5);
    let mut signal_out = Vec::with_capacity(np);
    let mut idler_out = Vec::with_capacity(np);
    for k in 0..np {
        let v_s = circuit.port_voltage(&col, 0, k);
        let a_k = if k == drive_port { Complex::new(half, T::zero()) } else { Complex::new(T::zero(), T::zero()) };
        signal_out.push(v_s - a_k);
        // Idler block unknowns are conjugated voltages with no incident wave.
        let w = circuit.port_voltage(&col, n, k);
        idler_out.push(w.conj());
    }
    let vj_signal = col[a - 1] - col[b - 1];
    let vj_idler = (col[n + a - 1] - col[n + b - 1]).conj();
    Ok(TwoToneSolution {
        signal_out,
        idler_out,
        signal_in: Complex::new(half, T::zero()),
        vj_signal,
        vj_idler,
    })
}

// -- dense complex solver -----------------------------------------------

/// Small dense complex matrix with Gaussian-elimination solve, sized for
/// nodal systems of a few dozen unknowns.
struct DenseMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> DenseMatrix<T> {
    fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex::new(T::zero(), T::zero()); n * n] }
    }

    #[inline]
    fn at(&mut self, row: usize, col: usize) -> &mut Complex<T> {
        &mut self.data[row * self.n + col]
    }

    /// Partial-pivot elimination with multiple right-hand sides.
    fn solve_multi(mut self, mut rhs: Vec<Vec<Complex<T>>>) -> Result<Vec<Vec<Complex<T>>>> {
        let n = self.n;
        let nrhs = if n == 0 { 0 } else { rhs[0].len() };
        let scale = self
            .data
            .iter()
            .map(|v| v.norm())
            .fold(T::zero(), T::max)
            .max(T::min_positive_value());
        let threshold = scale * T::epsilon() * real::<T>(100.0);
        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, self.data[r * n + col].norm()))
                .fold((col, T::zero()), |best, cand| if cand.1 > best.1 { cand } else { best });
            if pivot_mag <= threshold || !pivot_mag.is_finite() {
                return Err(Error::IllConditioned {
                    pivot: pivot_mag.to_f64().unwrap_or(f64::NAN),
                });
            }
            if pivot_row != col {
                for k in col..n {
                    self.data.swap(pivot_row * n + k, col * n + k);
                }
                rhs.swap(pivot_row, col);
            }
            let pivot = self.data[col * n + col];
            for r in (col + 1)..n {
                let factor = self.data[r * n + col] / pivot;
                if factor.norm() == T::zero() {
                    continue;
                }
                for k in col..n {
                    let v = self.data[col * n + k];
                    self.data[r * n + k] = self.data[r * n + k] - factor * v;
                }
                for j in 0..nrhs {
                    let v = rhs[col][j];
                    rhs[r][j] = rhs[r][j] - factor * v;
                }
            }
        }
        for col in (0..n).rev() {
            let pivot = self.data[col * n + col];
            for j in 0..nrhs {
                let mut acc = rhs[col][j];
                for k in (col + 1)..n {
                    acc = acc - self.data[col * n + k] * rhs[k][j];
                }
                rhs[col][j] = acc / pivot;
            }
        }
        Ok(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::ComplexFrequency;
    use crate::twoport::TwoPortResponse;
    use approx::assert_relative_eq;
    use std::f64::consts::TAU;

    #[test]
    fn series_resistor_two_port() {
        let ladder = Ladder::new(vec![Element::SeriesResistor { ohms: 50.0 }]).unwrap();
        let c = two_port_circuit(&ladder, 50.0).unwrap();
        let s = c.s_params(Complex::new(0.0, TAU * 1e9)).unwrap();
        assert_relative_eq!(s[0][0].re, 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(s[1][0].re, 2.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(s[0][1].re, 2.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn ladder_matches_cascade_path() {
        let ladder = Ladder::new(vec![
            Element::SeriesInductor { henries: 1.2e-9 },
            Element::ShuntCapacitor { farads: 0.6e-12 },
            Element::TransmissionLine { z0: 42.0, delay: 33e-12 },
            Element::OpenStub { z0: 55.0, delay: 21e-12 },
            Element::SeriesCapacitor { farads: 0.2e-12 },
        ])
        .unwrap();
        let net = TwoPortResponse::new(ladder.clone(), 50.0);
        let circuit = two_port_circuit(&ladder, 50.0).unwrap();
        for hz in [4.0e9, 6.5e9, 9.1e9] {
            let s_mna = circuit.s_params(Complex::new(0.0, TAU * hz)).unwrap();
            let s_cas = net.s_matrix(ComplexFrequency::real_freq(TAU * hz)).unwrap();
            assert!((s_mna[0][0] - s_cas.s11).norm() < 1e-9);
            assert!((s_mna[1][0] - s_cas.s21).norm() < 1e-9);
            assert!((s_mna[0][1] - s_cas.s12).norm() < 1e-9);
            assert!((s_mna[1][1] - s_cas.s22).norm() < 1e-9);
        }
    }

    #[test]
    fn lossless_ladder_is_unitary() {
        let ladder = Ladder::new(vec![
            Element::SeriesInductor { henries: 2.0e-9 },
            Element::ShuntCapacitor { farads: 0.8e-12 },
            Element::ShortStub { z0: 61.0, delay: 12e-12 },
        ])
        .unwrap();
        let c = two_port_circuit(&ladder, 50.0).unwrap();
        let s = c.s_params(Complex::new(0.0, TAU * 5e9)).unwrap();
        let p = s[0][0].norm_sqr() + s[1][0].norm_sqr();
        assert_relative_eq!(p, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn singular_matrix_reported() {
        let mut c = Circuit::<f64>::new();
        let n1 = c.node();
        c.capacitor(n1, 0, 1e-12);
        c.port(n1, 0, 50.0);
        // A node with no branches at all leaves a zero row.
        let _dangling = c.node();
        let r = c.s_params(Complex::new(0.0, TAU * 1e9));
        assert!(matches!(r, Err(Error::IllConditioned { .. })));
    }
}
