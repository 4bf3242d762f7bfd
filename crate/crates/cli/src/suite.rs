//! The four suites. Radial samples are evaluated once per triple (in
//! parallel over radii, assembled in grid order) and shared by every suite
//! of a run.

use maglab_core::verify::{
    comparison_report, derivative_check, doubling_from_profile, flux_bound_report,
    frequency_monotonicity, pohozaev_report, rellich_report, vanishing_order, PohozaevForm,
    TripleConstants, VanishingOrder,
};
use maglab_core::{BallRule, FrequencyProfile, ManufacturedTriple, RadialSample, RadiiGrid};
use rayon::prelude::*;

use crate::output::Record;
use crate::{CliError, RunConfig};

struct Entry {
    triple: ManufacturedTriple,
    samples: Option<Vec<RadialSample>>,
}

pub struct Runner {
    entries: Vec<Entry>,
    grid: RadiiGrid,
    rule: BallRule,
    identity_tol: f64,
    derivative_tol: f64,
    gammas: Vec<f64>,
    vanish_radii: RadiiGrid,
}

fn eval_err(triple: &ManufacturedTriple) -> impl Fn(maglab_core::Error) -> CliError + '_ {
    move |source| CliError::Evaluation {
        triple: triple.label.clone(),
        source,
    }
}

impl Runner {
    pub fn new(config: &RunConfig) -> Result<Self, CliError> {
        Ok(Self {
            entries: config
                .build_triples()?
                .into_iter()
                .map(|triple| Entry {
                    triple,
                    samples: None,
                })
                .collect(),
            grid: config.radii_grid()?,
            rule: config.ball_rule()?,
            identity_tol: config.tolerances.identity,
            derivative_tol: config.tolerances.derivative,
            gammas: config.gammas.clone(),
            vanish_radii: config.vanish_grid(),
        })
    }

    fn samples(&mut self, i: usize) -> Result<&[RadialSample], CliError> {
        let entry = &mut self.entries[i];
        if entry.samples.is_none() {
            let triple = &entry.triple;
            let rule = &self.rule;
            let samples: Vec<RadialSample> = self
                .grid
                .radii()
                .par_iter()
                .map(|&r| RadialSample::evaluate(triple, r, rule))
                .collect::<Result<_, _>>()
                .map_err(eval_err(triple))?;
            entry.samples = Some(samples);
        }
        Ok(entry.samples.as_deref().expect("filled above"))
    }

    fn profile(&mut self, i: usize) -> Result<FrequencyProfile, CliError> {
        let grid = self.grid.clone();
        let samples = self.samples(i)?.to_vec();
        let triple = &self.entries[i].triple;
        FrequencyProfile::from_samples(triple.label.clone(), grid, &samples)
            .map_err(eval_err(triple))
    }

    pub fn profiles(&mut self) -> Result<Vec<FrequencyProfile>, CliError> {
        (0..self.entries.len()).map(|i| self.profile(i)).collect()
    }

    pub fn verify(&mut self) -> Result<Vec<Record>, CliError> {
        let mut out = Vec::new();
        for i in 0..self.entries.len() {
            let profile = self.profile(i)?;
            let samples = self.samples(i)?.to_vec();
            let triple = &self.entries[i].triple;
            let label = triple.label.as_str();
            let constants =
                TripleConstants::estimate(triple, &self.rule).map_err(eval_err(triple))?;
            let r0 = constants.comparison_radius(triple.dim().n());
            for s in &samples {
                out.push(rellich_report(label, s, self.identity_tol));
                out.push(comparison_report(label, s, r0));
                out.push(flux_bound_report(label, s, &constants).map_err(eval_err(triple))?);
                out.push(pohozaev_report(
                    label,
                    s,
                    PohozaevForm::Paper,
                    self.identity_tol,
                ));
                out.push(pohozaev_report(
                    label,
                    s,
                    PohozaevForm::Classical,
                    self.identity_tol,
                ));
            }
            out.extend(derivative_check(
                &profile,
                self.identity_tol,
                self.derivative_tol,
            ));
            out.push(frequency_monotonicity(&profile).to_report());
        }
        Ok(out.into_iter().map(Record::Check).collect())
    }

    pub fn doubling(&mut self) -> Result<Vec<Record>, CliError> {
        let mut out = Vec::new();
        for i in 0..self.entries.len() {
            let profile = self.profile(i)?;
            let triple = &self.entries[i].triple;
            for &gamma in &self.gammas {
                let outcome = doubling_from_profile(triple, &profile, gamma, &self.rule)
                    .map_err(eval_err(triple))?;
                out.extend(outcome.reports.into_iter().map(Record::Check));
            }
        }
        Ok(out)
    }

    pub fn vanish(&mut self) -> Result<Vec<Record>, CliError> {
        self.entries
            .iter()
            .map(|e| {
                let order = vanishing_order(&*e.triple.omega, &self.vanish_radii, &self.rule)
                    .map_err(eval_err(&e.triple))?;
                let (order, slope) = match order {
                    VanishingOrder::Finite { order, slope } => (Some(order), Some(slope)),
                    VanishingOrder::NumericallyInfinite => (None, None),
                };
                Ok(Record::Vanishing {
                    triple: e.triple.label.clone(),
                    order,
                    slope,
                    radii: self.vanish_radii.radii().to_vec(),
                })
            })
            .collect()
    }
}
