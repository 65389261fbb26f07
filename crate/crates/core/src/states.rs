//! Single-mode density matrices in the Fock basis and their products.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::numkit::ln_binomial;
use crate::schur::{fock_basis, OccPattern};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
/// Tail mass left out when a state is built past the cutoff before loss.
const TAIL_TOL: f64 = 1e-18;
const MAX_EXTRA_CUTOFF: u32 = 20_000;

/// `⟨k|σ|l⟩` for `0 <= k, l <= cutoff`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeState {
    elements: DMatrix<Complex64>,
}

impl ModeState {
    /// Validates Hermiticity and the trace bound.
    pub fn from_matrix(elements: DMatrix<Complex64>) -> Result<Self> {
        if elements.nrows() != elements.ncols() || elements.nrows() == 0 {
            return Err(Error::Schema {
                path: "elements".into(),
                message: format!(
                    "expected a nonempty square matrix, got {}x{}",
                    elements.nrows(),
                    elements.ncols()
                ),
            });
        }
        let d = elements.nrows();
        for i in 0..d {
            for j in i..d {
                let defect = (elements[(i, j)] - elements[(j, i)].conj()).norm();
                if defect > HERMITIAN_TOL {
                    return Err(Error::NotHermitian {
                        row: i,
                        col: j,
                        defect,
                    });
                }
            }
        }
        let trace = elements.trace().re;
        if trace > 1.0 + TRACE_TOL {
            return Err(Error::Domain(format!("mode trace {trace} exceeds 1")));
        }
        Ok(ModeState { elements })
    }

    fn from_amplitudes(amps: &[Complex64]) -> Self {
        let d = amps.len();
        let elements = DMatrix::from_fn(d, d, |k, l| amps[k] * amps[l].conj());
        ModeState { elements }
    }

    pub fn cutoff(&self) -> u32 {
        (self.elements.nrows() - 1) as u32
    }

    pub fn get(&self, k: u32, l: u32) -> Complex64 {
        self.elements[(k as usize, l as usize)]
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.elements
    }

    pub fn trace(&self) -> f64 {
        self.elements.trace().re
    }

    /// Keeps rows and columns `0..=cutoff`.
    pub fn truncate(&self, cutoff: u32) -> ModeState {
        let d = (cutoff as usize + 1).min(self.elements.nrows());
        let mut m = DMatrix::zeros(cutoff as usize + 1, cutoff as usize + 1);
        m.view_mut((0, 0), (d, d))
            .copy_from(&self.elements.view((0, 0), (d, d)));
        ModeState { elements: m }
    }
}

pub fn vacuum_mode(cutoff: u32) -> ModeState {
    fock_mode(0, cutoff).expect("0 <= cutoff")
}

/// `|n_i⟩⟨n_i|`.
pub fn fock_mode(n_i: u32, cutoff: u32) -> Result<ModeState> {
    if n_i > cutoff {
        return Err(Error::range(format!(
            "Fock number {n_i} exceeds cutoff {cutoff}"
        )));
    }
    let d = cutoff as usize + 1;
    let mut m = DMatrix::zeros(d, d);
    m[(n_i as usize, n_i as usize)] = Complex64::new(1.0, 0.0);
    Ok(ModeState { elements: m })
}

fn squeezed_amplitudes(r: f64, cutoff: u32) -> Vec<Complex64> {
    let t = r.tanh();
    let mut amps = vec![Complex64::new(0.0, 0.0); cutoff as usize + 1];
    let mut a = 1.0 / r.cosh().sqrt();
    for k in 0..=(cutoff / 2) {
        if k > 0 {
            let kf = k as f64;
            a *= t * ((2.0 * kf - 1.0) / (2.0 * kf)).sqrt();
        }
        amps[2 * k as usize] = Complex64::new(a, 0.0);
    }
    amps
}

/// Squeezed vacuum `a_{2k} = (cosh r)^{-1/2} (tanh r)^k √((2k)!) / (2^k k!)`.
pub fn squeezed_mode(r: f64, cutoff: u32) -> Result<ModeState> {
    if !r.is_finite() || r < 0.0 {
        return Err(Error::range(format!("squeezing r must be >= 0, got {r}")));
    }
    Ok(ModeState::from_amplitudes(&squeezed_amplitudes(r, cutoff)))
}

fn coherent_amplitudes(alpha: Complex64, cutoff: u32) -> Vec<Complex64> {
    let mut amps = Vec::with_capacity(cutoff as usize + 1);
    let mut a = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for k in 0..=cutoff {
        if k > 0 {
            a = a * alpha / (k as f64).sqrt();
        }
        amps.push(a);
    }
    amps
}

/// Coherent state `e^{-|α|²} α^k conj(α)^l / √(k! l!)`.
pub fn coherent_mode(alpha: Complex64, cutoff: u32) -> Result<ModeState> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::range("coherent amplitude must be finite"));
    }
    Ok(ModeState::from_amplitudes(&coherent_amplitudes(
        alpha, cutoff,
    )))
}

/// Pure-loss channel with transmissivity `eta`, truncated at the input cutoff.
pub fn apply_uniform_loss(state: &ModeState, eta: f64) -> Result<ModeState> {
    lossy_truncated(state, eta, state.cutoff())
}

fn lossy_truncated(state: &ModeState, eta: f64, cutoff: u32) -> Result<ModeState> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::range(format!(
            "transmissivity must lie in [0, 1], got {eta}"
        )));
    }
    let top = state.cutoff() as usize;
    let d = cutoff as usize + 1;
    let mut out = DMatrix::<Complex64>::zeros(d, d);
    if eta == 1.0 {
        return Ok(state.truncate(cutoff));
    }
    if eta == 0.0 {
        out[(0, 0)] = Complex64::new(state.trace(), 0.0);
        return Ok(ModeState { elements: out });
    }
    let (ln_eta, ln_loss) = (eta.ln(), (1.0 - eta).ln());
    for k in 0..d.min(top + 1) {
        for l in 0..d.min(top + 1) {
            let mut acc = Complex64::new(0.0, 0.0);
            let jmax = top - k.max(l);
            for j in 0..=jmax {
                let src = state.elements[(k + j, l + j)];
                if src == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let (kf, lf, jf) = (k as f64, l as f64, j as f64);
                let ln_w = 0.5 * (ln_binomial(kf + jf, jf) + ln_binomial(lf + jf, jf))
                    + 0.5 * (kf + lf) * ln_eta
                    + jf * ln_loss;
                acc += src * ln_w.exp();
            }
            out[(k, l)] = acc;
        }
    }
    Ok(ModeState { elements: out })
}

/// How a single mode is prepared.
#[derive(Debug, Clone, PartialEq)]
pub enum ModeSpec {
    Vacuum,
    Fock(u32),
    Squeezed(f64),
    Coherent(Complex64),
    Matrix(DMatrix<Complex64>),
}

impl ModeSpec {
    /// Builds the mode at `cutoff`, applying loss when `loss_eta` is given.
    ///
    /// Squeezed and coherent modes are generated past the cutoff before loss
    /// so photons above the cutoff still feed the low-number elements.
    pub fn build(&self, cutoff: u32, loss_eta: Option<f64>) -> Result<ModeState> {
        let Some(eta) = loss_eta else {
            return self.build_raw(cutoff);
        };
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::range(format!(
                "loss_eta must lie in [0, 1], got {eta}"
            )));
        }
        let base = match self {
            ModeSpec::Squeezed(_) | ModeSpec::Coherent(_) => {
                self.build_raw(self.extended_cutoff(cutoff))?
            }
            _ => self.build_raw(cutoff)?,
        };
        lossy_truncated(&base, eta, cutoff)
    }

    fn build_raw(&self, cutoff: u32) -> Result<ModeState> {
        match self {
            ModeSpec::Vacuum => Ok(vacuum_mode(cutoff)),
            ModeSpec::Fock(n) => fock_mode(*n, cutoff),
            ModeSpec::Squeezed(r) => squeezed_mode(*r, cutoff),
            ModeSpec::Coherent(a) => coherent_mode(*a, cutoff),
            ModeSpec::Matrix(m) => Ok(ModeState::from_matrix(m.clone())?.truncate(cutoff)),
        }
    }

    fn extended_cutoff(&self, cutoff: u32) -> u32 {
        let probs: Box<dyn Fn(u32) -> Vec<f64>> = match self {
            ModeSpec::Squeezed(r) => {
                let r = *r;
                Box::new(move |c| {
                    squeezed_amplitudes(r, c)
                        .iter()
                        .map(|a| a.norm_sqr())
                        .collect()
                })
            }
            ModeSpec::Coherent(a) => {
                let a = *a;
                Box::new(move |c| {
                    coherent_amplitudes(a, c)
                        .iter()
                        .map(|x| x.norm_sqr())
                        .collect()
                })
            }
            _ => return cutoff,
        };
        let mut c = cutoff.max(16);
        while c < cutoff + MAX_EXTRA_CUTOFF {
            let p = probs(c);
            let mass: f64 = crate::numkit::compensated_sum(p.iter().copied());
            if 1.0 - mass < TAIL_TOL {
                break;
            }
            c *= 2;
        }
        c.min(cutoff + MAX_EXTRA_CUTOFF)
    }
}

/// `ρ = ⊗_a σ^(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    modes: Vec<ModeState>,
}

impl ProductState {
    pub fn new(modes: Vec<ModeState>) -> Result<Self> {
        if let Some(first) = modes.first() {
            if let Some(bad) = modes.iter().position(|s| s.cutoff() != first.cutoff()) {
                return Err(Error::Mismatch(format!(
                    "mode {bad} has cutoff {}, mode 0 has {}",
                    modes[bad].cutoff(),
                    first.cutoff()
                )));
            }
        }
        Ok(ProductState { modes })
    }

    /// `|n⟩⟨n|` as a product state with cutoff `cutoff`.
    pub fn fock(pattern: &OccPattern, cutoff: u32) -> Result<Self> {
        let modes = pattern
            .counts()
            .iter()
            .map(|&c| fock_mode(c, cutoff))
            .collect::<Result<_>>()?;
        ProductState::new(modes)
    }

    /// `d` squeezed modes followed by `m - d` vacua.
    pub fn squeezed_uniform(m: usize, d: usize, r: f64, cutoff: u32) -> Result<Self> {
        if d > m {
            return Err(Error::range(format!("d={d} exceeds m={m}")));
        }
        let sq = squeezed_mode(r, cutoff)?;
        let vac = vacuum_mode(cutoff);
        ProductState::new(
            (0..m)
                .map(|a| if a < d { sq.clone() } else { vac.clone() })
                .collect(),
        )
    }

    pub fn modes(&self) -> &[ModeState] {
        &self.modes
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn cutoff(&self) -> Option<u32> {
        self.modes.first().map(ModeState::cutoff)
    }

    /// Applies the same loss to every mode (elements past the cutoff are unavailable).
    pub fn with_uniform_loss(&self, eta: f64) -> Result<Self> {
        let modes = self
            .modes
            .iter()
            .map(|s| apply_uniform_loss(s, eta))
            .collect::<Result<_>>()?;
        ProductState::new(modes)
    }

    /// `ρ|_n` in the Fock basis of `S_{m,n}` (not normalized).
    pub fn restricted_matrix(&self, n: u32) -> Result<(Vec<OccPattern>, DMatrix<Complex64>)> {
        match self.cutoff() {
            Some(c) if c < n => {
                return Err(Error::range(format!(
                    "cutoff {c} below particle number {n}"
                )))
            }
            _ => {}
        }
        let basis = fock_basis(self.modes.len(), n);
        let d = basis.len();
        let mat = DMatrix::from_fn(d, d, |i, j| {
            let (a, b) = (basis[i].counts(), basis[j].counts());
            self.modes
                .iter()
                .enumerate()
                .fold(Complex64::new(1.0, 0.0), |acc, (t, s)| {
                    acc * s.get(a[t], b[t])
                })
        });
        Ok((basis, mat))
    }

    /// `ρ_(n) = ρ|_n / Tr[ρ|_n]`.
    pub fn normalized_restriction(&self, n: u32) -> Result<(Vec<OccPattern>, DMatrix<Complex64>)> {
        let (basis, mat) = self.restricted_matrix(n)?;
        let norm = mat.trace().re;
        if norm < 1e-300 {
            return Err(Error::ZeroNorm { n, norm });
        }
        Ok((basis, mat / Complex64::new(norm, 0.0)))
    }
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn number(v: &Value, path: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| schema(path, "expected a number"))
}

fn count(v: &Value, path: &str) -> Result<u32> {
    v.as_u64()
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| schema(path, "expected a nonnegative integer"))
}

fn complex(v: &Value, path: &str) -> Result<Complex64> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([re, im]) => Ok(Complex64::new(
            number(re, &format!("{path}[0]"))?,
            number(im, &format!("{path}[1]"))?,
        )),
        _ => Err(schema(path, "expected a [re, im] pair")),
    }
}

fn allow_keys(obj: &serde_json::Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(format!("{path}.{k}"), "unknown field")),
        None => Ok(()),
    }
}

fn parse_mode(v: &Value, path: &str) -> Result<(ModeSpec, Option<f64>)> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema(path, "expected an object"))?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| schema(format!("{path}.kind"), "missing kind"))?;
    let field = |name: &str| {
        obj.get(name)
            .ok_or_else(|| schema(format!("{path}.{name}"), "missing field"))
    };
    let spec = match kind {
        "vacuum" => {
            allow_keys(obj, &["kind", "loss_eta"], path)?;
            ModeSpec::Vacuum
        }
        "fock" => {
            allow_keys(obj, &["kind", "n", "loss_eta"], path)?;
            ModeSpec::Fock(count(field("n")?, &format!("{path}.n"))?)
        }
        "squeezed" => {
            allow_keys(obj, &["kind", "r", "loss_eta"], path)?;
            ModeSpec::Squeezed(number(field("r")?, &format!("{path}.r"))?)
        }
        "coherent" => {
            allow_keys(obj, &["kind", "re", "im", "loss_eta"], path)?;
            ModeSpec::Coherent(Complex64::new(
                number(field("re")?, &format!("{path}.re"))?,
                number(field("im")?, &format!("{path}.im"))?,
            ))
        }
        "matrix" => {
            allow_keys(obj, &["kind", "elements", "loss_eta"], path)?;
            let epath = format!("{path}.elements");
            let rows = field("elements")?
                .as_array()
                .ok_or_else(|| schema(&epath, "expected an array of rows"))?;
            let d = rows.len();
            let mut m = DMatrix::zeros(d, d);
            for (i, row) in rows.iter().enumerate() {
                let rpath = format!("{epath}[{i}]");
                let row = row
                    .as_array()
                    .ok_or_else(|| schema(&rpath, "expected a row"))?;
                if row.len() != d {
                    return Err(schema(
                        &rpath,
                        format!("expected {d} entries, got {}", row.len()),
                    ));
                }
                for (j, z) in row.iter().enumerate() {
                    m[(i, j)] = complex(z, &format!("{rpath}[{j}]"))?;
                }
            }
            ModeState::from_matrix(m.clone())?;
            ModeSpec::Matrix(m)
        }
        other => {
            return Err(schema(
                format!("{path}.kind"),
                format!("unknown kind '{other}'"),
            ))
        }
    };
    let eta = match obj.get("loss_eta") {
        Some(v) => Some(number(v, &format!("{path}.loss_eta"))?),
        None => None,
    };
    Ok((spec, eta))
}

/// Parsed form of a state document, before the cutoff is fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpec {
    pub cutoff: Option<u32>,
    pub modes: Vec<(ModeSpec, Option<f64>)>,
}

impl StateSpec {
    pub fn parse(document: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(document).map_err(|e| schema("$", e.to_string()))?;
        let obj = root
            .as_object()
            .ok_or_else(|| schema("$", "expected an object"))?;
        allow_keys(obj, &["cutoff", "modes"], "$")?;
        let cutoff = match obj.get("cutoff") {
            Some(v) => Some(count(v, "$.cutoff")?),
            None => None,
        };
        let modes = obj
            .get("modes")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("$.modes", "expected an array"))?
            .iter()
            .enumerate()
            .map(|(i, v)| parse_mode(v, &format!("$.modes[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        if modes.is_empty() {
            return Err(schema("$.modes", "at least one mode is required"));
        }
        Ok(StateSpec { cutoff, modes })
    }

    /// Builds all modes; the document cutoff wins over `default_cutoff`.
    pub fn build(&self, default_cutoff: Option<u32>) -> Result<ProductState> {
        let cutoff = self.cutoff.or(default_cutoff).ok_or_else(|| {
            schema(
                "$.cutoff",
                "no cutoff given and no particle number to default to",
            )
        })?;
        let modes = self
            .modes
            .iter()
            .enumerate()
            .map(|(i, (spec, eta))| {
                spec.build(cutoff, *eta).map_err(|e| match e {
                    Error::Schema { path, message } => {
                        schema(format!("$.modes[{i}].{path}"), message)
                    }
                    other => other,
                })
            })
            .collect::<Result<_>>()?;
        ProductState::new(modes)
    }
}

/// Parses and builds a state document.
pub fn parse_state_spec(document: &str, default_cutoff: Option<u32>) -> Result<ProductState> {
    StateSpec::parse(document)?.build(default_cutoff)
}

/// Random full-rank density matrix `A A† / Tr`, `A` complex Gaussian.
pub fn random_mode<R: Rng + ?Sized>(cutoff: u32, rng: &mut R) -> ModeState {
    let d = cutoff as usize + 1;
    let a = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(
            rng.sample::<f64, _>(StandardNormal),
            rng.sample::<f64, _>(StandardNormal),
        )
    });
    let mut rho = &a * a.adjoint();
    let tr = rho.trace().re;
    rho /= Complex64::new(tr, 0.0);
    // Symmetrize away rounding so the Hermitian check is exact.
    let rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    ModeState { elements: rho }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: f64) -> bool {
        (a - Complex64::new(b, 0.0)).norm() < 1e-14
    }

    #[test]
    fn fock_examples() {
        let v = fock_mode(0, 4).unwrap();
        assert!(close(v.get(0, 0), 1.0));
        assert!(close(fock_mode(1, 4).unwrap().get(1, 1), 1.0));
        assert_eq!(v.trace(), 1.0);
        assert!(fock_mode(5, 4).is_err());
    }

    #[test]
    fn squeezed_examples() {
        assert_eq!(squeezed_mode(0.0, 6).unwrap(), vacuum_mode(6));
        let s = squeezed_mode(0.7, 8).unwrap();
        assert_eq!(s.get(1, 1), Complex64::new(0.0, 0.0));
        let t = 0.7f64.tanh();
        let a2 = (2.0f64).sqrt() / 2.0 * t / 0.7f64.cosh().sqrt();
        assert!((s.get(2, 2).re - a2 * a2).abs() < 1e-15);
        let mean: f64 = (0..=200)
            .map(|k| k as f64 * squeezed_mode(1f64.asinh(), 200).unwrap().get(k, k).re)
            .sum();
        assert!((mean - 1.0).abs() < 1e-10);
    }

    #[test]
    fn coherent_examples() {
        assert_eq!(
            coherent_mode(Complex64::new(0.0, 0.0), 3).unwrap(),
            vacuum_mode(3)
        );
        let c = coherent_mode(Complex64::new(0.6, 0.8), 5).unwrap();
        assert!((c.get(1, 1).re - (-1f64).exp()).abs() < 1e-15);
        let tail = (-1f64).exp() / 720.0 * 7.0 / 6.0;
        assert!((1.0 - c.trace()).abs() <= tail);
    }

    #[test]
    fn loss_examples() {
        let one = fock_mode(1, 3).unwrap();
        assert_eq!(apply_uniform_loss(&one, 1.0).unwrap(), one);
        let lost = apply_uniform_loss(&one, 0.6).unwrap();
        assert!(close(lost.get(0, 0), 0.4));
        assert!(close(lost.get(1, 1), 0.6));
        let gone = apply_uniform_loss(&fock_mode(3, 3).unwrap(), 0.0).unwrap();
        assert_eq!(gone, vacuum_mode(3));
        assert!(apply_uniform_loss(&one, 1.2).is_err());
    }

    #[test]
    fn loss_composes() {
        let s = squeezed_mode(0.5, 30).unwrap();
        let twice = apply_uniform_loss(&apply_uniform_loss(&s, 0.8).unwrap(), 0.5).unwrap();
        let once = apply_uniform_loss(&s, 0.4).unwrap();
        assert!((twice.matrix() - once.matrix())
            .iter()
            .all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn lossy_squeezed_uses_photons_past_cutoff() {
        let spec = ModeSpec::Squeezed(1.0);
        let cut = spec.build(2, Some(0.5)).unwrap();
        let wide = apply_uniform_loss(&squeezed_mode(1.0, 400).unwrap(), 0.5)
            .unwrap()
            .truncate(2);
        assert!((cut.matrix() - wide.matrix())
            .iter()
            .all(|z| z.norm() < 1e-14));
    }

    #[test]
    fn parse_examples() {
        let p = parse_state_spec(
            r#"{"cutoff":2,"modes":[{"kind":"fock","n":1},{"kind":"vacuum"}]}"#,
            None,
        )
        .unwrap();
        assert_eq!(p.mode_count(), 2);
        assert_eq!(p.cutoff(), Some(2));

        let g = parse_state_spec(
            r#"{"modes":[{"kind":"squeezed","r":0.8814},{"kind":"squeezed","r":0.8814}]}"#,
            Some(4),
        )
        .unwrap();
        assert_eq!(g.cutoff(), Some(4));

        let bad = parse_state_spec(
            r#"{"cutoff":1,"modes":[{"kind":"matrix","elements":[[[0.5,0],[0.1,0]],[[0.2,0],[0.5,0]]]}]}"#,
            None,
        );
        assert!(matches!(bad, Err(Error::NotHermitian { .. })));

        let err = parse_state_spec(r#"{"cutoff":1,"modes":[{"kind":"fock"}]}"#, None).unwrap_err();
        assert!(
            matches!(err, Error::Schema { ref path, .. } if path == "$.modes[0].n"),
            "{err:?}"
        );

        let err = parse_state_spec(r#"{"modes":[{"kind":"vacuum"}]}"#, None).unwrap_err();
        assert!(matches!(err, Error::Schema { .. }));
    }

    #[test]
    fn parse_loss() {
        let p = parse_state_spec(
            r#"{"cutoff":1,"modes":[{"kind":"fock","n":1,"loss_eta":0.25}]}"#,
            None,
        )
        .unwrap();
        assert!(close(p.modes()[0].get(1, 1), 0.25));
    }

    #[test]
    fn squeezed_two_particle_restriction_is_pure() {
        let p = ProductState::squeezed_uniform(1, 1, 0.9, 2).unwrap();
        let (_, rho) = p.normalized_restriction(2).unwrap();
        assert!(close(rho[(0, 0)], 1.0));
    }
}
