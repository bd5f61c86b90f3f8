use std::fs;
use std::path::Path;

use super::config::{RunConfig, ScenarioKind};
use super::output::{discrete_csv, gaussian_csv, multi_csv, svg_plot};
use super::CliError;
use crate::discrete::{brute_force_frontier, validate_channel, DmcState};
use crate::gaussian::{cstar, sweep_region, sweep_region_multi, Abscissas, Scenario};
use crate::geometry::RatePoint2;

/// Everything a command produces; the caller decides where it goes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CommandOutput {
    /// Main result: a CSV table or a plain-text report.
    pub text: String,
    pub svg: Option<String>,
    /// Diagnostics for stderr.
    pub warnings: Vec<String>,
}

/// Read and validate a channel file. Every failure here is an input-file
/// error.
pub fn load_channel(path: &Path) -> Result<DmcState, CliError> {
    let input = |msg: String| CliError::Input {
        path: path.display().to_string(),
        msg,
    };
    let text = fs::read_to_string(path).map_err(|e| input(e.to_string()))?;
    let ch = DmcState::parse(&text).map_err(|e| input(e.to_string()))?;
    validate_channel(&ch)
        .into_result()
        .map_err(|e| input(e.to_string()))?;
    Ok(ch)
}

pub fn cmd_region(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let kind = cfg.scenario()?;
    let mut out = CommandOutput::default();
    let points: Vec<RatePoint2> = match kind {
        ScenarioKind::Gaussian(scenario) => {
            let params = cfg.gaussian()?;
            let f = sweep_region(scenario, &params, cfg.grid(), cfg.r0)?;
            if f.is_empty() {
                out.warnings.push(format!(
                    "warning: common rate r0 = {} exceeds every total cap, the slice is empty",
                    cfg.r0
                ));
            }
            out.text = gaussian_csv(&f);
            f.points
        }
        ScenarioKind::DiscreteNc | ScenarioKind::DiscreteC => {
            let ch = load_channel(cfg.channel_file()?)?;
            let causal = kind == ScenarioKind::DiscreteC;
            let f = brute_force_frontier(&ch, cfg.aux, cfg.k, causal, cfg.resolution)?;
            out.text = discrete_csv(&f);
            f.points
        }
    };
    if cfg.svg.is_some() {
        out.svg = Some(svg_plot(
            &format!("{} rate region", kind.name()),
            &[(kind.name().to_string(), points)],
        ));
    }
    Ok(out)
}

pub fn cmd_cstar(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let params = cfg.gaussian()?;
    let c = cstar(&params)?;
    let mut text = format!(
        "cstar = {:.9}\nalpha1 = {:.9}\nalpha2 = {:.9}\n",
        c.value, c.alpha1, c.alpha2
    );
    if !c.in_unit_square() {
        text.push_str("note: the optimizing coefficients lie outside [0, 1]^2\n");
    }
    Ok(CommandOutput {
        text,
        ..Default::default()
    })
}

/// Conferencing frontiers for each capacity `C12 = C21 = c` in `c_values`,
/// sampled on shared abscissas. Uses the configured conferencing scenario,
/// causal by default.
pub fn cmd_fig3(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let scenario = match cfg.scenario {
        None => Scenario::MacceC,
        Some(ScenarioKind::Gaussian(s)) if s.is_conferencing() => s,
        Some(other) => {
            return Err(CliError::config(format!(
                "fig3 overlays conferencing regions, scenario {} is not one",
                other.name()
            )))
        }
    };
    let params = cfg.gaussian()?;
    let caps: Vec<(f64, f64)> = cfg.c_values.iter().map(|&c| (c, c)).collect();
    let fs = sweep_region_multi(scenario, &params, &caps, cfg.grid(), 0.0, Abscissas::Shared)?;
    let curves: Vec<(f64, _)> = cfg.c_values.iter().copied().zip(fs).collect();
    let mut out = CommandOutput {
        text: multi_csv(&curves),
        ..Default::default()
    };
    if cfg.svg.is_some() {
        let plotted: Vec<(String, Vec<RatePoint2>)> = curves
            .iter()
            .map(|(c, f)| (format!("C = {c}"), f.points.clone()))
            .collect();
        out.svg = Some(svg_plot(
            &format!("{} regions, P1 = {}, P2 = {}, PS = {}, PZ = {}", scenario, params.p1, params.p2, params.ps, params.pz),
            &plotted,
        ));
    }
    Ok(out)
}
