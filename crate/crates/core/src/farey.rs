//! The shadowed Farey tree.
//!
//! The tree starts from the fishbone: two vertices `𝒱` (growing downward)
//! and `𝒰` (growing upward) sharing the regions `e₁ = (1,0,0)` on the left
//! and `e₂ = (0,1,0)` on the right. `𝒱` has outer region `(1,1,ξ)` below it
//! and `𝒰` has `(−1,1,η)` above it.
//!
//! Every other vertex has the form `w·B·w⁻¹` with `B ∈ {𝒰, 𝒱}` alternating
//! by depth, and its outer region is `w` applied to the outer region of `B`,
//! normalized so that its first nonzero classical entry is positive. Going
//! down, the left child multiplies the conjugator by `B` and the right child
//! by `B⁻¹`; going up the roles are swapped, so the left child always faces
//! `1/0`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grassmann::RingElem;
use crate::rational::Rational;
use crate::supermatrix::{Generator, SuperMatrix3, SuperVector3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    Down,
    Up,
}

impl Half {
    pub fn name(self) -> &'static str {
        match self {
            Half::Down => "down",
            Half::Up => "up",
        }
    }

    fn root(self) -> Generator {
        match self {
            Half::Down => Generator::V,
            Half::Up => Generator::U,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FareyNode {
    /// The order-3 vertex element `w·B·w⁻¹`.
    pub element: SuperMatrix3,
    /// Regions around the vertex: `[left, right, outer]`.
    pub regions: [SuperVector3; 3],
    pub depth: usize,
    /// Index of the parent in [`FareyTree::nodes`].
    pub parent: Option<usize>,
    pub half: Half,
    #[serde(skip)]
    conjugator: SuperMatrix3,
    #[serde(skip)]
    conjugator_inv: SuperMatrix3,
    #[serde(skip)]
    base: Generator,
}

impl FareyNode {
    pub fn left(&self) -> &SuperVector3 {
        &self.regions[0]
    }

    pub fn right(&self) -> &SuperVector3 {
        &self.regions[1]
    }

    pub fn outer(&self) -> &SuperVector3 {
        &self.regions[2]
    }

    pub fn conjugator(&self) -> &SuperMatrix3 {
        &self.conjugator
    }
}

fn other(b: Generator) -> Generator {
    match b {
        Generator::U => Generator::V,
        _ => Generator::U,
    }
}

/// Outer region of the root vertex `B`.
fn base_outer(b: Generator) -> SuperVector3 {
    match b {
        Generator::V => SuperVector3::new(RingElem::one(), RingElem::one(), RingElem::xi()),
        _ => SuperVector3::new(RingElem::from_int(-1), RingElem::one(), RingElem::eta()),
    }
}

/// The four vectors of the initial diagram: `e₁, e₂, (1,1,ξ), (−1,1,η)`.
pub fn fishbone() -> [SuperVector3; 4] {
    [
        SuperVector3::basis(0),
        SuperVector3::basis(1),
        base_outer(Generator::V),
        base_outer(Generator::U),
    ]
}

/// Flips the sign of `v` if needed so its first nonzero body is positive.
pub fn normalize_sign(v: SuperVector3) -> SuperVector3 {
    let lead = if !v.entries[0].body.is_zero() {
        &v.entries[0].body
    } else {
        &v.entries[1].body
    };
    if lead.is_negative() {
        v.neg()
    } else {
        v
    }
}

impl FareyNode {
    fn root(half: Half) -> FareyNode {
        let b = half.root();
        FareyNode {
            element: b.matrix(),
            regions: [
                SuperVector3::basis(0),
                SuperVector3::basis(1),
                base_outer(b),
            ],
            depth: 0,
            parent: None,
            half,
            conjugator: SuperMatrix3::identity(),
            conjugator_inv: SuperMatrix3::identity(),
            base: b,
        }
    }

    /// Left or right child. Without `with_element` the vertex element is
    /// left as the identity, which is all a descent needs.
    fn branch(&self, go_left: bool, parent: Option<usize>, with_element: bool) -> FareyNode {
        let b = self.base.matrix();
        let b_inv = &b * &b;
        // down: left multiplies by B; up: left multiplies by B⁻¹
        let (w, wi) = if go_left == (self.half == Half::Down) {
            (&self.conjugator * &b, &b_inv * &self.conjugator_inv)
        } else {
            (&self.conjugator * &b_inv, &b * &self.conjugator_inv)
        };
        let nb = other(self.base);
        let element = if with_element {
            &(&w * &nb.matrix()) * &wi
        } else {
            SuperMatrix3::identity()
        };
        let outer = normalize_sign(w.mul_vec(&base_outer(nb)));
        let (l, r) = if go_left {
            (self.left().clone(), self.outer().clone())
        } else {
            (self.outer().clone(), self.right().clone())
        };
        FareyNode {
            element,
            regions: [l, r, outer],
            depth: self.depth + 1,
            parent,
            half: self.half,
            conjugator: w,
            conjugator_inv: wi,
            base: nb,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FareyTree {
    pub depth: usize,
    /// Breadth-first: for each depth, the downward vertices left to right,
    /// then the upward ones.
    pub nodes: Vec<FareyNode>,
}

impl FareyTree {
    pub fn new(depth: usize) -> FareyTree {
        let mut nodes = vec![FareyNode::root(Half::Down), FareyNode::root(Half::Up)];
        let mut level: Vec<usize> = vec![0, 1];
        for _ in 0..depth {
            let mut next = Vec::with_capacity(level.len() * 2);
            for half in [Half::Down, Half::Up] {
                for &i in &level {
                    if nodes[i].half != half {
                        continue;
                    }
                    for go_left in [true, false] {
                        let child = nodes[i].branch(go_left, Some(i), true);
                        next.push(nodes.len());
                        nodes.push(child);
                    }
                }
            }
            level = next;
        }
        FareyTree { depth, nodes }
    }

    pub fn level(&self, half: Half, depth: usize) -> impl Iterator<Item = &FareyNode> {
        self.nodes
            .iter()
            .filter(move |n| n.half == half && n.depth == depth)
    }

    /// One line for the fishbone, then one line per half and depth listing
    /// the outer regions left to right.
    pub fn to_text(&self) -> String {
        let mut out = String::from("fishbone:");
        for v in fishbone() {
            write!(out, "  {v}").unwrap();
        }
        out.push('\n');
        for half in [Half::Down, Half::Up] {
            for d in 0..=self.depth {
                write!(out, "{} {d}:", half.name()).unwrap();
                for n in self.level(half, d) {
                    write!(out, "  {}", n.outer()).unwrap();
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<_> = self
            .nodes
            .iter()
            .map(|n| {
                serde_json::json!({
                    "depth": n.depth,
                    "half": n.half,
                    "parent": n.parent,
                    "element": n.element,
                    "regions": n.regions,
                    "display": {
                        "left": n.left().to_string(),
                        "right": n.right().to_string(),
                        "outer": n.outer().to_string(),
                    },
                })
            })
            .collect();
        serde_json::json!({
            "depth": self.depth,
            "fishbone": fishbone().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "nodes": nodes,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph farey {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            writeln!(
                out,
                "  n{i} [label=\"{} {}\\n{}\"];",
                n.half.name(),
                n.depth,
                n.outer()
            )
            .unwrap();
        }
        writeln!(out, "  n0 -> n1 [dir=none, style=dashed];").unwrap();
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                writeln!(out, "  n{p} -> n{i};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn farey_tree(depth: usize) -> FareyTree {
    FareyTree::new(depth)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyShadowValue {
    pub p: BigInt,
    pub q: BigInt,
    pub p_hat: BigInt,
    pub q_hat: BigInt,
    /// `(p̂q − pq̂)/q²`.
    pub fs: Rational,
    /// Depth of the vertex whose outer region carries `p/q`.
    pub depth: usize,
    pub vector: SuperVector3,
}

impl FareyShadowValue {
    pub fn from_vector(v: SuperVector3, depth: usize) -> Result<FareyShadowValue> {
        let (num, den, _) = v.split()?;
        let int = |x: &Rational| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::BadShape(v.to_string()))
            }
        };
        let (p, p_hat, q, q_hat) = (
            int(&num.body)?,
            int(&num.soul)?,
            int(&den.body)?,
            int(&den.soul)?,
        );
        if q.is_zero() {
            return Err(Error::ProjectiveInfinity);
        }
        let fs = Rational::new(&p_hat * &q - &p * &q_hat, &q * &q);
        Ok(FareyShadowValue {
            p,
            q,
            p_hat,
            q_hat,
            fs,
            depth,
            vector: v,
        })
    }
}

/// Farey shadow of `p/q > 0`, found by descending from `𝒱` along the
/// Stern–Brocot path. `None` if the region lies deeper than `max_depth`.
pub fn farey_shadow(
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
    max_depth: usize,
) -> Result<Option<FareyShadowValue>> {
    let (p, q) = (p.into(), q.into());
    if q.is_zero() {
        return Err(Error::ProjectiveInfinity);
    }
    let target = Rational::new(p, q);
    if !target.is_positive() {
        return Err(Error::NonPositive(crate::rational::format_compact(&target)));
    }
    let mut node = FareyNode::root(Half::Down);
    loop {
        let (a, b) = node.outer().classical();
        let here = a / b;
        if here == target {
            return FareyShadowValue::from_vector(node.outer().clone(), node.depth).map(Some);
        }
        if node.depth >= max_depth {
            return Ok(None);
        }
        node = node.branch(target > here, None, false);
    }
}

/// The regions labelled `F_{k+1}/F_k` for `k = 1..=n`: the zigzag path
/// left, right, left, … from `𝒱`.
///
/// With `ℱ = 𝒱𝒰⁻¹` the odd-indexed vectors are `u_{2j−1} = ℱ^j e₂` and the
/// even-indexed ones are `u_{2j} = ℱ^{j−1}𝒱(−1, 1, η)ᵗ`.
pub fn fibonacci_branch(n: usize) -> Vec<SuperVector3> {
    let mut node = FareyNode::root(Half::Down);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            node = node.branch(k % 2 == 1, None, false);
        }
        out.push(node.outer().clone());
    }
    out
}
