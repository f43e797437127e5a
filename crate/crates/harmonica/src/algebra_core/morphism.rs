use std::collections::BTreeMap;
use std::fmt;

use super::{AlgebraError, Rational, Ring};

/// Algebras whose elements expand as rational combinations of letter strings,
/// so that a morphism is determined by the images of single letters.
pub trait WordAlgebra: Ring {
    type Letter: Copy + Ord + fmt::Debug + Send + Sync;

    fn expand(&self) -> Vec<(Vec<Self::Letter>, Rational)>;
    /// Every letter of this element's alphabet (inverse letters included for
    /// groups).
    fn alphabet_letters(&self) -> Vec<Self::Letter>;
    fn letter_element(&self, letter: Self::Letter) -> Self;
    fn letter_name(&self, letter: Self::Letter) -> String;
}

/// An algebra morphism out of a [`WordAlgebra`], stored as letter images and
/// extended multiplicatively and linearly.
#[derive(Clone, Debug)]
pub struct Substitution<S: WordAlgebra, T: Ring> {
    images: BTreeMap<S::Letter, T>,
    one: T,
}

impl<S: WordAlgebra, T: Ring> Substitution<S, T> {
    pub fn new(one: T) -> Self {
        Substitution {
            images: BTreeMap::new(),
            one,
        }
    }

    pub fn with(mut self, letter: S::Letter, image: T) -> Self {
        self.images.insert(letter, image);
        self
    }

    pub fn insert(&mut self, letter: S::Letter, image: T) {
        self.images.insert(letter, image);
    }

    pub fn image(&self, letter: &S::Letter) -> Option<&T> {
        self.images.get(letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = &S::Letter> {
        self.images.keys()
    }

    pub fn one(&self) -> &T {
        &self.one
    }

    pub fn apply_word(&self, word: &[S::Letter]) -> Result<T, AlgebraError> {
        let mut acc = self.one.clone();
        for l in word {
            let img = self
                .images
                .get(l)
                .ok_or_else(|| AlgebraError::MissingImage(format!("{:?}", l)))?;
            acc = acc.times(img);
        }
        Ok(acc)
    }

    pub fn apply(&self, s: &S) -> Result<T, AlgebraError> {
        let mut out = self.one.zero_like();
        for (word, c) in s.expand() {
            out = out.plus(&self.apply_word(&word)?.scaled(&c));
        }
        Ok(out)
    }
}
