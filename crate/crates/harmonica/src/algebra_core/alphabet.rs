use std::fmt;

use serde::Serialize;

/// Generator sets of the free groups (and direct products of free groups)
/// the engine works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupAlphabet {
    /// `X0 X1`
    F2,
    /// `X0 X1 | Y0 Y1`, the two factors commuting.
    F2Sq,
    /// `X0 X1 | Y0 Y1 | Z0 Z1`, used for coassociativity checks.
    F2Cube,
    /// `x15 x25 x35`
    F3,
}

/// Letter sets of the free associative algebras (and tensor products of them).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TensorAlphabet {
    /// `e0 e1`
    V,
    /// `e0 e1 | f0 f1`
    VSq,
    /// `e0 e1 | f0 f1 | g0 g1`
    VCube,
    /// `t15 t25 t35`
    F3Lie,
}

impl GroupAlphabet {
    pub fn generators(self) -> &'static [&'static str] {
        match self {
            GroupAlphabet::F2 => &["X0", "X1"],
            GroupAlphabet::F2Sq => &["X0", "X1", "Y0", "Y1"],
            GroupAlphabet::F2Cube => &["X0", "X1", "Y0", "Y1", "Z0", "Z1"],
            GroupAlphabet::F3 => &["x15", "x25", "x35"],
        }
    }

    pub fn rank(self) -> usize {
        self.generators().len()
    }

    /// Which commuting factor a generator belongs to.
    pub fn factor(self, generator: u8) -> u8 {
        match self {
            GroupAlphabet::F2 | GroupAlphabet::F3 => 0,
            GroupAlphabet::F2Sq | GroupAlphabet::F2Cube => generator / 2,
        }
    }

    pub fn factor_count(self) -> u8 {
        match self {
            GroupAlphabet::F2 | GroupAlphabet::F3 => 1,
            GroupAlphabet::F2Sq => 2,
            GroupAlphabet::F2Cube => 3,
        }
    }

    pub fn index_of(self, name: &str) -> Option<u8> {
        self.generators().iter().position(|g| *g == name).map(|i| i as u8)
    }

    /// The tensor alphabet receiving the Magnus expansion: generator `i` maps
    /// to letter `i`.
    pub fn magnus_target(self) -> TensorAlphabet {
        match self {
            GroupAlphabet::F2 => TensorAlphabet::V,
            GroupAlphabet::F2Sq => TensorAlphabet::VSq,
            GroupAlphabet::F2Cube => TensorAlphabet::VCube,
            GroupAlphabet::F3 => TensorAlphabet::F3Lie,
        }
    }
}

impl TensorAlphabet {
    pub fn generators(self) -> &'static [&'static str] {
        match self {
            TensorAlphabet::V => &["e0", "e1"],
            TensorAlphabet::VSq => &["e0", "e1", "f0", "f1"],
            TensorAlphabet::VCube => &["e0", "e1", "f0", "f1", "g0", "g1"],
            TensorAlphabet::F3Lie => &["t15", "t25", "t35"],
        }
    }

    pub fn rank(self) -> usize {
        self.generators().len()
    }

    pub fn factor(self, letter: u8) -> u8 {
        match self {
            TensorAlphabet::V | TensorAlphabet::F3Lie => 0,
            TensorAlphabet::VSq | TensorAlphabet::VCube => letter / 2,
        }
    }

    pub fn factor_count(self) -> u8 {
        match self {
            TensorAlphabet::V | TensorAlphabet::F3Lie => 1,
            TensorAlphabet::VSq => 2,
            TensorAlphabet::VCube => 3,
        }
    }

    pub fn index_of(self, name: &str) -> Option<u8> {
        self.generators().iter().position(|g| *g == name).map(|i| i as u8)
    }

    /// The group alphabet whose Magnus expansion lands here.
    pub fn magnus_source(self) -> GroupAlphabet {
        match self {
            TensorAlphabet::V => GroupAlphabet::F2,
            TensorAlphabet::VSq => GroupAlphabet::F2Sq,
            TensorAlphabet::VCube => GroupAlphabet::F2Cube,
            TensorAlphabet::F3Lie => GroupAlphabet::F3,
        }
    }
}

impl fmt::Display for GroupAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl fmt::Display for TensorAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}
