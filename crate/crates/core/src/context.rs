//! A loaded preset: Hopf algebra, calculus, representations and options,
//! plus lazily built graded models shared by the higher layers.

use crate::calculus::Calculus;
use crate::hopf::HopfAlgebra;
use crate::presets::{Options, RepresentationData};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct Context {
    pub name: String,
    pub alg: Arc<HopfAlgebra>,
    pub calc: Arc<Calculus>,
    pub representations: Vec<RepresentationData>,
    pub options: Options,
}

impl Context {
    pub fn new(
        name: String,
        alg: Arc<HopfAlgebra>,
        calc: Arc<Calculus>,
        representations: Vec<RepresentationData>,
        options: Options,
    ) -> Context {
        Context { name, alg, calc, representations, options }
    }

    pub fn dim(&self) -> usize {
        self.calc.dim()
    }

    pub fn representation(&self, name: &str) -> Option<&RepresentationData> {
        self.representations.iter().find(|r| r.name == name)
    }
}
