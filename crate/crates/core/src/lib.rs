//! Estimation of Annual Average Daily Traffic (AADT) from 24-hour short-term
//! traffic counts.
//!
//! Permanent count stations (ATRs) record hourly volumes year-round; most
//! locations only ever get a one-day portable count. This crate turns those
//! one-day counts into AADT estimates two ways:
//!
//! * an epsilon-SVR model with an RBF kernel, trained per road group
//!   (interstate / arterial / collector) on ATR data ([`svr`], [`tuning`],
//!   [`estimators`]), and
//! * the traditional expansion-factor method (axle factor times monthly
//!   seasonal factor) as a reference ([`estimators::factor_estimate`]).
//!
//! [`ingest`] holds the CSV formats for counts, factors, hyperparameters and
//! per-station ATR data files, plus an HTTP fetcher for collecting ATR data.
//! [`evaluation`] computes MAPE comparisons and generates synthetic datasets
//! with known ground truth.

pub mod domain;
pub mod estimators;
pub mod evaluation;
pub mod ingest;
pub mod rng;
pub mod svr;
pub mod tuning;
