//! Commands behind the `matmeasure` binary. Every command returns a
//! serializable report; `main` handles I/O and exit codes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use matmeasure::accont::{self, AcReport};
use matmeasure::cyclic::{self, Cyclicity, HermitianOperator, VectorSystem, XmueReport};
use matmeasure::fuzz;
use matmeasure::json::{self, MeasureDto, OperatorDto};
use matmeasure::linalg::{Tolerances, C64};
use matmeasure::multop::{MultOp, PiecewiseScalarFn};
use matmeasure::verify::{self, Suite, SuiteReport};
use matmeasure::{BorelSet, Error, MatrixMeasure};

/// Number of fuzzed sets checked by the spectral-projection commutation.
const OMEGA_CASES: usize = 8;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("property failure: {0}")]
    Property(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Property(_) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    pub tol: f64,
    pub cluster_tol: f64,
    pub seed: u64,
    pub fuzz_cases: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self { tol: 1e-10, cluster_tol: 1e-8, seed: 0, fuzz_cases: 200 }
    }
}

impl Config {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Config(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.cluster_tol > 0.0 && self.cluster_tol.is_finite()) {
            return Err(CliError::Config(format!("cluster_tol must be positive, got {}", self.cluster_tol)));
        }
        if self.fuzz_cases == 0 {
            return Err(CliError::Config("fuzz_cases must be at least 1".into()));
        }
        Ok(())
    }

    fn tolerances(&self) -> Tolerances {
        Tolerances { hermitian: self.tol, cluster: self.cluster_tol, ..Tolerances::default() }
    }
}

fn operator_input(text: &str, config: &Config) -> CliResult<(HermitianOperator, VectorSystem)> {
    let dto: OperatorDto = json::from_str(text)?;
    let a = HermitianOperator::with_tolerances(dto.matrix()?, config.tolerances())?;
    let mut vectors = dto.vectors();
    if vectors.is_empty() {
        vectors.push(vec![C64::new(0.0, 0.0); a.dim()]);
    }
    let phi = VectorSystem::new(a.dim(), vectors)?;
    Ok((a, phi))
}

/// Eigenvalue points, their complement and seeded random sets.
fn omega_family(a: &HermitianOperator, seed: u64) -> Vec<BorelSet> {
    let eigen = BorelSet::points(&a.eig().eigenvalues);
    let mut rng = fuzz::rng(seed);
    let mut family = vec![eigen.clone(), eigen.complement()];
    family.extend((0..OMEGA_CASES).map(|_| fuzz::random_set(&mut rng, 3, 2)));
    family
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub n: usize,
    pub d: usize,
    pub measure: MeasureDto,
    pub cyclicity: Cyclicity,
    pub cyclic: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xmue: Option<XmueReport>,
    pub sigma: BorelSet,
    pub sigma_p: BorelSet,
    pub sigma_ac: BorelSet,
}

pub fn cmd_analyze(input: &str, config: &Config) -> CliResult<AnalyzeReport> {
    config.validate()?;
    let (a, phi) = operator_input(input, config)?;
    let measure = cyclic::spectral_matrix_measure(&a, &phi)?;
    let cyclicity = cyclic::cyclicity(&a, &phi)?;
    let cyclic = cyclicity.rank == a.dim();
    let xmue = if cyclic { Some(cyclic::verify_xmue(&a, &phi, config.tol, &omega_family(&a, config.seed))?) } else { None };
    let tx = MultOp::identity_symbol(measure.clone());
    let (sigma, sigma_p) = if measure.is_empty() {
        (BorelSet::empty(), BorelSet::empty())
    } else {
        (tx.spectrum()?, tx.point_spectrum()?)
    };
    Ok(AnalyzeReport {
        n: a.dim(),
        d: phi.d(),
        measure: MeasureDto::from(&measure),
        cyclicity,
        cyclic,
        xmue,
        sigma,
        sigma_p,
        sigma_ac: accont::ac_spectrum(&measure),
    })
}

/// Fails with a property failure when a residual exceeds the threshold.
pub fn cmd_verify_xmue(input: &str, config: &Config) -> CliResult<XmueReport> {
    config.validate()?;
    let (a, phi) = operator_input(input, config)?;
    Ok(cyclic::verify_xmue(&a, &phi, config.tol, &omega_family(&a, config.seed))?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub symbol: String,
    pub spectrum: BorelSet,
    pub point_spectrum: BorelSet,
    pub op_norm: f64,
}

pub fn cmd_spectrum(measure: &str, symbol: &str) -> CliResult<SpectrumReport> {
    let m = json::measure_from_str(measure)?;
    let f = PiecewiseScalarFn::parse(symbol)?;
    let op = MultOp::new(m, f);
    Ok(SpectrumReport {
        symbol: symbol.to_string(),
        spectrum: op.spectrum()?,
        point_spectrum: op.point_spectrum()?,
        op_norm: op.op_norm()?,
    })
}

pub fn cmd_restrict(measure: &str, set: &str) -> CliResult<MeasureDto> {
    let m = json::measure_from_str(measure)?;
    let omega = BorelSet::parse(set)?;
    Ok(MeasureDto::from(&m.restrict(&omega)))
}

pub fn cmd_acdecomp(measure: &str, set: &str) -> CliResult<AcReport> {
    let m: MatrixMeasure = json::measure_from_str(measure)?;
    let g = BorelSet::parse(set)?;
    Ok(accont::ac_report(&m, &g))
}

pub fn cmd_verify(suite: &str, config: &Config) -> CliResult<SuiteReport> {
    config.validate()?;
    let suite: Suite = suite.parse()?;
    Ok(verify::run(suite, config.seed, config.fuzz_cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SWAP: &str = r#"{"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]], "vectors": [[[1,0],[0,0]]]}"#;

    #[test]
    fn analyze_swap() {
        let r = cmd_analyze(SWAP, &Config::default()).unwrap();
        assert!(r.cyclic);
        assert_eq!(r.measure.atoms.len(), 2);
        for atom in &r.measure.atoms {
            assert!((atom.weight[0][0][0] - 0.5).abs() < 1e-14);
        }
        assert!(r.xmue.unwrap().max_residual < 1e-12);
        let pts = r.sigma.isolated_points();
        assert!(r.sigma.intervals().is_empty() && pts.len() == 2);
        assert!((pts[0] + 1.0).abs() < 1e-14 && (pts[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn analyze_rejects_non_hermitian() {
        let text = r#"{"matrix": [[[0,0],[1,0]],[[0,0],[0,0]]], "vectors": [[[1,0],[0,0]]]}"#;
        let err = cmd_analyze(text, &Config::default()).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::NotHermitian { .. })));
        assert_eq!(err.exit_code(), 2);
        assert!(matches!(cmd_analyze("{", &Config::default()), Err(CliError::Core(Error::Parse { .. }))));
    }

    #[test]
    fn analyze_zero_vectors() {
        for text in [
            r#"{"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]], "vectors": [[[0,0],[0,0]]]}"#,
            r#"{"matrix": [[[0,0],[1,0]],[[1,0],[0,0]]], "vectors": []}"#,
        ] {
            let r = cmd_analyze(text, &Config::default()).unwrap();
            assert!(!r.cyclic && r.xmue.is_none());
            assert!(r.measure.atoms.is_empty() && r.sigma.is_empty());
        }
    }

    #[test]
    fn config_validation() {
        let bad = Config { tol: 0.0, ..Config::default() };
        assert!(matches!(cmd_analyze(SWAP, &bad), Err(CliError::Config(_))));
        let bad = Config { fuzz_cases: 0, ..Config::default() };
        assert!(cmd_verify("all", &bad).is_err());
    }

    #[test]
    fn unknown_suite() {
        let err = cmd_verify("unknown", &Config::default()).unwrap_err();
        assert!(matches!(err, CliError::Core(Error::UnknownSuite(_))));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn measure_commands() {
        let m = r#"{"d": 1, "atoms": [{"t": 2.0, "weight": [[[1,0]]]}], "segments": [{"a": 0, "b": 1, "density": [[[1,0]]]}]}"#;
        let s = cmd_spectrum(m, "x").unwrap();
        assert_eq!(s.spectrum, BorelSet::parse("[0,1]u{2}").unwrap());
        assert_eq!(s.op_norm, 2.0);
        let r = cmd_restrict(m, "[0,0.5]").unwrap();
        assert_eq!(r.segments.len(), 1);
        assert!(r.atoms.is_empty());
        let ac = cmd_acdecomp(m, "(0,0.5)").unwrap();
        assert!(ac.inclusion_holds && ac.hypotheses_hold);
    }
}
