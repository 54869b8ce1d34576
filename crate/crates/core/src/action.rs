//! Group actions with a block structure for an axial candidate `g`.
//!
//! The carrier is either the group itself under left multiplication or a
//! pull-back of another action along an equivariant map. Either way the
//! points are group elements, and a block-index function `idx` picks out the
//! translates `D_i = g^i D` of a fundamental domain `D = D_0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupModel, Letter, DEFAULT_CAPACITY};

/// How the block index of a point is computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockRule {
    /// Free group, `g` a single letter: signed length of the leading `g`-power.
    LeadingPower { letter: Letter },
    /// Abelian-like families: `floor(x[coord] / step)`, where `step` is the
    /// matching coordinate of `g`.
    Coordinate { coord: usize, step: i64 },
    /// Direct products: the rule of one factor on which `g` has infinite order.
    Factor { index: usize, inner: Box<BlockRule> },
    /// Free group, arbitrary `g`: `D` consists of the shortlex-minimal points of
    /// each orbit `<g>x`, and `idx(x)` is the `n` with `g^-n x` in `D`.
    CosetMinimum { g: GroupElement },
}

impl BlockRule {
    /// Chooses the block rule for `g` acting on `group` by left multiplication.
    pub fn for_candidate(group: &GroupModel, g: &GroupElement) -> Result<Self> {
        if !group.contains(g) {
            return Err(Error::GroupMismatch);
        }
        match group {
            GroupModel::Free { .. } => {
                if g.is_identity() {
                    return Err(Error::FiniteOrder(g.to_string()));
                }
                let letters = g.letters();
                if letters.len() == 1 {
                    Ok(BlockRule::LeadingPower { letter: letters[0] })
                } else {
                    Ok(BlockRule::CosetMinimum { g: g.clone() })
                }
            }
            GroupModel::FreeAbelian { .. } => {
                let exps = g.exponents().expect("shape checked");
                match exps.iter().position(|&x| x != 0) {
                    Some(coord) => Ok(BlockRule::Coordinate {
                        coord,
                        step: exps[coord],
                    }),
                    None => Err(Error::FiniteOrder(g.to_string())),
                }
            }
            GroupModel::CyclicTimesFinite { .. } => {
                let (z, _) = g.cyclic_parts().expect("shape checked");
                if z == 0 {
                    Err(Error::FiniteOrder(g.to_string()))
                } else {
                    Ok(BlockRule::Coordinate { coord: 0, step: z })
                }
            }
            GroupModel::Product { factors } => {
                let comps = g.components().expect("shape checked");
                for (index, (f, c)) in factors.iter().zip(comps).enumerate() {
                    match BlockRule::for_candidate(f, c) {
                        Ok(inner) => {
                            return Ok(BlockRule::Factor {
                                index,
                                inner: Box::new(inner),
                            })
                        }
                        Err(Error::FiniteOrder(_)) => continue,
                        Err(e) => return Err(e),
                    }
                }
                Err(Error::FiniteOrder(g.to_string()))
            }
        }
    }

    pub fn index(&self, x: &GroupElement) -> i64 {
        match self {
            BlockRule::LeadingPower { letter } => {
                let letters = x.free_letters().expect("free group point");
                match letters.first() {
                    Some(&c) if c == *letter => letters.iter().take_while(|&&c| c == *letter).count() as i64,
                    Some(&c) if c == letter ^ 1 => -(letters.iter().take_while(|&&c| c == letter ^ 1).count() as i64),
                    _ => 0,
                }
            }
            BlockRule::Coordinate { coord, step } => {
                let v = match x.exponents() {
                    Some(v) => v[*coord],
                    None => x.cyclic_parts().expect("abelian point").0,
                };
                floor_div(v, *step)
            }
            BlockRule::Factor { index, inner } => inner.index(&x.components().expect("product point")[*index]),
            BlockRule::CosetMinimum { g } => {
                // |g^k| >= |k| in a free group, so the minimum of g^-n x has |n| <= 2|x|.
                let span = 2 * x.len() as i64 + 1;
                let ginv = g.inverse();
                let mut best = x.clone();
                let mut best_n = 0i64;
                let mut cur = x.clone();
                for n in 1..=span {
                    cur = ginv.mul(&cur);
                    if cur < best {
                        best = cur.clone();
                        best_n = n;
                    }
                }
                cur = x.clone();
                for n in 1..=span {
                    cur = g.mul(&cur);
                    if cur < best {
                        best = cur.clone();
                        best_n = -n;
                    }
                }
                best_n
            }
        }
    }
}

/// Floor division that is correct for either sign of the divisor.
fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// A point map used to pull an action back.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapKind {
    Identity,
    /// `x -> x c`
    RightMultiply { element: String },
    /// The orbit map `h -> h x0` of a left-regular action.
    Orbit { element: String },
    /// `x -> c x`; equivariant only when `c` is central.
    LeftMultiply { element: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivariantMap {
    Identity,
    RightMultiply(GroupElement),
    Orbit(GroupElement),
    LeftMultiply(GroupElement),
}

impl EquivariantMap {
    pub fn from_kind(kind: &MapKind, group: &GroupModel) -> Result<Self> {
        Ok(match kind {
            MapKind::Identity => EquivariantMap::Identity,
            MapKind::RightMultiply { element } => EquivariantMap::RightMultiply(group.parse(element)?),
            MapKind::Orbit { element } => EquivariantMap::Orbit(group.parse(element)?),
            MapKind::LeftMultiply { element } => EquivariantMap::LeftMultiply(group.parse(element)?),
        })
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        match self {
            EquivariantMap::Identity => x.clone(),
            EquivariantMap::RightMultiply(c) | EquivariantMap::Orbit(c) => x.mul(c),
            EquivariantMap::LeftMultiply(c) => c.mul(x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    LeftRegular { rule: BlockRule },
    PulledBack { base: Box<ActionModel>, map: EquivariantMap },
}

/// A `G`-set together with the candidate `g` and its block structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionModel {
    group: GroupModel,
    g: GroupElement,
    carrier: Carrier,
}

/// The subset `w D_[lo, hi]` of the carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub base: GroupElement,
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(base: GroupElement, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Interval { base, lo, hi })
    }
}

impl ActionModel {
    /// Left multiplication of `group` on itself, with `g` as axial candidate.
    pub fn left_regular(group: GroupModel, g: GroupElement) -> Result<Self> {
        group.validate()?;
        let rule = BlockRule::for_candidate(&group, &g)?;
        Ok(ActionModel {
            group,
            g,
            carrier: Carrier::LeftRegular { rule },
        })
    }

    /// Pulls `target` back along `map`. The new block index is `idx_target . f`,
    /// so the new fundamental domain is `f^-1(D)`.
    pub fn pull_back(target: ActionModel, map: EquivariantMap) -> Result<Self> {
        let ball = target.group.ball(2, DEFAULT_CAPACITY)?;
        for h in ball.iter() {
            for x in ball.iter() {
                let lhs = map.apply(&h.mul(x));
                let rhs = target.act_unchecked(h, &map.apply(x));
                if lhs != rhs {
                    return Err(Error::EquivarianceViolation {
                        h: h.to_string(),
                        x: x.to_string(),
                    });
                }
            }
        }
        Ok(ActionModel {
            group: target.group.clone(),
            g: target.g.clone(),
            carrier: Carrier::PulledBack {
                base: Box::new(target),
                map,
            },
        })
    }

    pub fn group(&self) -> &GroupModel {
        &self.group
    }

    pub fn g(&self) -> &GroupElement {
        &self.g
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn act(&self, h: &GroupElement, x: &GroupElement) -> Result<GroupElement> {
        if !self.group.contains(h) || !self.group.contains(x) {
            return Err(Error::GroupMismatch);
        }
        Ok(self.act_unchecked(h, x))
    }

    #[inline]
    pub fn act_unchecked(&self, h: &GroupElement, x: &GroupElement) -> GroupElement {
        h.mul(x)
    }

    /// The unique `i` with `x` in `D_i`.
    pub fn block_index(&self, x: &GroupElement) -> i64 {
        match &self.carrier {
            Carrier::LeftRegular { rule } => rule.index(x),
            Carrier::PulledBack { base, map } => base.block_index(&map.apply(x)),
        }
    }

    /// Exact membership of `x` in `w D_[lo, hi]`.
    pub fn in_interval(&self, x: &GroupElement, interval: &Interval) -> bool {
        let i = self.block_index(&interval.base.inverse().mul(x));
        interval.lo <= i && i <= interval.hi
    }

    /// Exact tameness test. For every supported family the commensurator of
    /// `<g>` equals its centralizer, so tame means commuting with `g`.
    pub fn is_tame_exact(&self, h: &GroupElement) -> bool {
        h.commutes_with(&self.g)
    }
}
