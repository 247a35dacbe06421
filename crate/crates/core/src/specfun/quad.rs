//! Globally adaptive Gauss–Kronrod (10/21) quadrature and fixed
//! Gauss–Legendre rules.

use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

impl QuadResult {
    pub(crate) fn zero() -> Self {
        Self {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        }
    }

    pub(crate) fn add(self, other: QuadResult) -> Self {
        Self {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }

    pub(crate) fn scale(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            error_estimate: self.error_estimate * factor.abs(),
            evaluations: self.evaluations,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Target: `|error| ≤ tol · max(1, |value|)`.
    pub tol: f64,
    pub max_subdivisions: usize,
}

impl QuadOptions {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            max_subdivisions: 4000,
        }
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_482_447_422_245,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// 10-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Rounding-level error below which subdivision cannot make progress.
    floor: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gk21<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_k = fc * WGK[10];
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    let floor = 50.0 * f64::EPSILON * res_abs * half.abs();
    let error = rescale_error(
        (res_k - res_g) * half,
        res_abs * half.abs(),
        res_asc * half.abs(),
    );
    if !value.is_finite() {
        return Err(Error::Convergence {
            context: format!("non-finite integrand on [{a}, {b}]"),
            estimate: value,
            error_estimate: f64::INFINITY,
        });
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        floor,
    })
}

/// `∫_a^b f`, with a fallible integrand.
pub fn adaptive_quad_with<F>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidInput(format!(
            "quadrature interval [{a}, {b}] must be finite with a < b"
        )));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "quadrature tolerance must be positive, got {}",
            opts.tol
        )));
    }
    let first = gk21(&mut f, a, b)?;
    let mut evaluations = 21;
    let mut value = first.value;
    let mut error = first.error;
    let mut floor = first.floor;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    let mut subdivisions = 1;
    while error > (opts.tol * value.abs().max(1.0)).max(2.0 * floor) {
        if subdivisions >= opts.max_subdivisions {
            return Err(Error::Convergence {
                context: format!("adaptive quadrature on [{a}, {b}]"),
                estimate: value,
                error_estimate: error,
            });
        }
        let worst = heap.pop().expect("heap holds every panel");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Panel below floating-point resolution: keep what we have.
            heap.push(worst);
            break;
        }
        let left = gk21(&mut f, worst.a, mid)?;
        let right = gk21(&mut f, mid, worst.b)?;
        evaluations += 42;
        subdivisions += 1;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
        if subdivisions % 64 == 0 {
            // Resum to shed accumulated cancellation in the running totals.
            value = heap.iter().map(|p| p.value).sum();
            error = heap.iter().map(|p| p.error).sum();
            floor = heap.iter().map(|p| p.floor).sum();
        }
    }
    value = heap.iter().map(|p| p.value).sum();
    error = heap.iter().map(|p| p.error).sum();
    Ok(QuadResult {
        value,
        error_estimate: error,
        evaluations,
    })
}

/// `∫_a^b f` to `tol · max(1, |value|)`.
pub fn adaptive_quad<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    adaptive_quad_with(|x| Ok(f(x)), a, b, QuadOptions::new(tol))
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]` together with its spectral
/// integration matrix: `cumulative[m][j] = ∫_{-1}^{x_m} ℓ_j(t) dt`, where
/// `ℓ_j` is the Lagrange basis polynomial on the nodes. Contracting a row
/// with nodal values integrates the interpolant from `-1` to node `m`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub cumulative: Vec<Vec<f64>>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "Gauss-Legendre rule needs at least two nodes");
        let (nodes, weights) = legendre_nodes(n);
        let bary: Vec<f64> = (0..n)
            .map(|j| {
                let prod: f64 = (0..n)
                    .filter(|&k| k != j)
                    .map(|k| nodes[j] - nodes[k])
                    .product();
                1.0 / prod
            })
            .collect();
        let lagrange = |j: usize, t: f64| -> f64 {
            let mut p = bary[j];
            for (k, xk) in nodes.iter().enumerate() {
                if k != j {
                    p *= t - xk;
                }
            }
            p
        };
        let cumulative = nodes
            .iter()
            .map(|&xm| {
                let h = 0.5 * (xm + 1.0);
                (0..n)
                    .map(|j| {
                        nodes
                            .iter()
                            .zip(&weights)
                            .map(|(&y, &w)| w * lagrange(j, h * y + (xm - h)))
                            .sum::<f64>()
                            * h
                    })
                    .collect()
            })
            .collect();
        Self {
            nodes,
            weights,
            cumulative,
        }
    }

    /// Shared 16-point rule.
    pub fn sixteen() -> &'static GaussLegendre {
        static RULE: OnceLock<GaussLegendre> = OnceLock::new();
        RULE.get_or_init(|| GaussLegendre::new(16))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Roots of `P_n` by Newton's method from Tricomi's initial guesses.
fn legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn elementary_integrals() {
        let r = adaptive_quad(f64::sin, 0.0, PI, 1e-14).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
        assert!(r.error_estimate >= 0.0 && r.evaluations >= 1);
        let r = adaptive_quad(|x| x * x, 0.0, 1.0, 1e-14).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn log_singularity_matches_dilog() {
        let r = adaptive_quad(|x| (-x).ln_1p() / x, 0.0, 1.0, 1e-12).unwrap();
        let li2 = crate::specfun::dilog(1.0).unwrap();
        assert!((r.value + li2).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn polynomials_are_exact() {
        // GK21 is exact through degree 31.
        for deg in 0..=31 {
            let r = adaptive_quad(|x| (deg as f64 + 1.0) * x.powi(deg), 0.0, 1.0, 1e-14).unwrap();
            assert!((r.value - 1.0).abs() < 1e-14, "degree {deg}: {}", r.value);
            if deg < 20 {
                assert_eq!(r.evaluations, 21);
            }
        }
    }

    #[test]
    fn invalid_arguments() {
        assert!(adaptive_quad(|x| x, 1.0, 1.0, 1e-8).is_err());
        assert!(adaptive_quad(|x| x, 2.0, 1.0, 1e-8).is_err());
        assert!(adaptive_quad(|x| x, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let opts = QuadOptions {
            tol: 1e-15,
            max_subdivisions: 3,
        };
        let err =
            adaptive_quad_with(|x| Ok((50.0 * x).sin() / x.sqrt()), 1e-9, 10.0, opts).unwrap_err();
        match err {
            Error::Convergence {
                estimate,
                error_estimate,
                ..
            } => {
                assert!(estimate.is_finite());
                assert!(error_estimate > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn gauss_legendre_rule() {
        let gl = GaussLegendre::new(16);
        let total: f64 = gl.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        // ∫_{-1}^{1} t^30 = 2/31, degree 2n-1 = 31 exact
        let v: f64 = gl
            .nodes
            .iter()
            .zip(&gl.weights)
            .map(|(x, w)| w * x.powi(30))
            .sum();
        assert!((v - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn cumulative_matrix_integrates_interpolant() {
        let gl = GaussLegendre::sixteen();
        let f = |t: f64| (2.0 * t).cos();
        let vals: Vec<f64> = gl.nodes.iter().map(|&t| f(t)).collect();
        for (m, row) in gl.cumulative.iter().enumerate() {
            let got: f64 = row.iter().zip(&vals).map(|(s, v)| s * v).sum();
            let exact = 0.5 * ((2.0 * gl.nodes[m]).sin() - (-2.0f64).sin());
            assert!((got - exact).abs() < 1e-14, "node {m}: {got} vs {exact}");
        }
    }
}
