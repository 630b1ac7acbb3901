//! Generator declarations and generator universes.

use std::collections::HashMap;

use super::rat::Rat;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn from_bit(b: u8) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub id: String,
    pub parity: Parity,
    /// Conformal weight.
    pub weight: Rat,
    /// `true` when the generator is killed by the derivation.
    pub torsion: bool,
}

impl GenDecl {
    pub fn new(id: &str, parity: Parity, weight: Rat, torsion: bool) -> Self {
        GenDecl { id: id.to_string(), parity, weight, torsion }
    }

    pub fn even(id: &str, weight: Rat) -> Self {
        Self::new(id, Parity::Even, weight, false)
    }

    pub fn odd(id: &str, weight: Rat) -> Self {
        Self::new(id, Parity::Odd, weight, false)
    }
}

/// An ordered list of generators; the declaration index fixes the monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Universe {
    gens: Vec<GenDecl>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new(gens: Vec<GenDecl>) -> Result<Self, Error> {
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.id.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate generator id `{}`", g.id)));
            }
        }
        Ok(Universe { gens, index })
    }

    pub fn empty() -> Self {
        Universe::default()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[GenDecl] {
        &self.gens
    }

    pub fn gen(&self, i: usize) -> &GenDecl {
        &self.gens[i]
    }

    pub fn find(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.gens[i].parity
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.gens[i].parity == Parity::Odd
    }

    pub fn is_torsion(&self, i: usize) -> bool {
        self.gens[i].torsion
    }

    pub fn weight(&self, i: usize) -> &Rat {
        &self.gens[i].weight
    }
}
