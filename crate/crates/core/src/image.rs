//! Enumeration and structural analysis of the finite braid-group images.
//!
//! Three cooperating pieces:
//!
//! * [`closure`]: breadth-first multiplication closure of exact monomial
//!   generators, the workhorse for `Im(B_n)`. The frontier is expanded in
//!   parallel against a concurrent dedup set; the resulting element *set* (and
//!   hence the order) is independent of scheduling and generator order.
//! * [`diagonal_subgroup_order`]: order of a subgroup of `(Z_N)^d` given by
//!   exponent vectors, via the Smith normal form of `[G; N I]` — this covers
//!   `Im(P_n)` without enumerating it.
//! * [`slot_permutation`] / [`exact_sequence_report`]: the quotient map onto
//!   `S_n` read off the permutation parts, and the combined verdict that
//!   `1 -> Im(P_n) -> Im(B_n) -> S_n -> 1` is exact.

mod snf;

use std::collections::HashSet;
use std::path::Path;

use dashmap::DashSet;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{DenseMatrix, MonomialMatrix, Phase};
use crate::braid;
use crate::error::{Error, Result};
use crate::tol;
use crate::ybe::YbeSolution;

/// Default element cap for closure enumeration.
pub const DEFAULT_CLOSURE_LIMIT: usize = 2_000_000;

/// Result of a closure enumeration.
pub enum ClosureOutcome<T> {
    Complete(Vec<T>),
    LimitExceeded,
}

impl<T> ClosureOutcome<T> {
    pub fn order(&self) -> GroupOrder {
        match self {
            ClosureOutcome::Complete(v) => GroupOrder::Exact(v.len() as u128),
            ClosureOutcome::LimitExceeded => GroupOrder::LimitExceeded,
        }
    }

    pub fn elements(&self) -> Option<&[T]> {
        match self {
            ClosureOutcome::Complete(v) => Some(v),
            ClosureOutcome::LimitExceeded => None,
        }
    }
}

/// Multiply-xor hasher for the packed element encodings. The default SipHash
/// dominates the BFS profile; the keys here are already high-entropy packed
/// words, so a splitmix-style finalizer is plenty.
#[derive(Default)]
struct MixHasher(u64);

fn mix64(mut x: u64) -> u64 {
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl std::hash::Hasher for MixHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            self.0 = mix64(self.0 ^ u64::from_le_bytes(buf));
        }
    }

    fn write_u32(&mut self, v: u32) {
        self.0 = mix64(self.0 ^ v as u64);
    }

    fn write_u64(&mut self, v: u64) {
        self.0 = mix64(self.0 ^ v);
    }

    fn write_u128(&mut self, v: u128) {
        self.0 = mix64(self.0 ^ v as u64).wrapping_add(mix64((v >> 64) as u64));
    }

    fn write_usize(&mut self, v: usize) {
        self.write_u64(v as u64);
    }

    fn write_length_prefix(&mut self, _len: usize) {}
}

type MixBuild = std::hash::BuildHasherDefault<MixHasher>;

/// Generic breadth-first closure core: expand each frontier level in parallel
/// against a shared dedup set. `None` means the limit tripped. The returned
/// element *set* is schedule- and generator-order-independent because
/// elements are deduplicated by canonical value.
fn bfs_closure<T>(
    step: &[T],
    identity: T,
    limit: usize,
    compose_into: impl Fn(&T, &T, &mut T) + Send + Sync,
) -> Option<Vec<T>>
where
    T: Clone + Eq + std::hash::Hash + Send + Sync,
{
    let seen: DashSet<T, MixBuild> = DashSet::with_hasher(MixBuild::default());
    seen.insert(identity.clone());
    let mut elements = vec![identity.clone()];
    let mut frontier = vec![identity];

    while !frontier.is_empty() {
        if seen.len() > limit {
            return None;
        }
        let seen_ref = &seen;
        let compose = &compose_into;
        let next: Vec<T> = frontier
            .par_iter()
            .flat_map_iter(|m| {
                let mut scratch = m.clone();
                step.iter().filter_map(move |g| {
                    compose(m, g, &mut scratch);
                    if seen_ref.contains(&scratch) {
                        return None;
                    }
                    let owned = scratch.clone();
                    seen_ref.insert(owned.clone()).then_some(owned)
                })
            })
            .collect();
        elements.extend_from_slice(&next);
        frontier = next;
    }
    (elements.len() <= limit).then_some(elements)
}

/// Bit layout for monomials that fit one `u128`: entry `j` holds the target
/// index above the phase exponent, `dim * (perm_bits + exp_bits) <= 128`.
/// Everything generated by the 4x4 families at n <= 4 with small phase orders
/// lands here; larger instances use the vector encoding below.
#[derive(Clone, Copy)]
struct SmallCodec {
    dim: usize,
    entry_bits: u32,
    exp_bits: u32,
    modulus: u64,
}

fn bits_for(max_value: u64) -> u32 {
    64 - max_value.leading_zeros()
}

impl SmallCodec {
    fn fits(dim: usize, modulus: u64) -> Option<Self> {
        let exp_bits = bits_for(modulus - 1);
        let entry_bits = bits_for(dim as u64 - 1) + exp_bits;
        if entry_bits as usize * dim <= 128 && entry_bits > 0 {
            Some(SmallCodec {
                dim,
                entry_bits,
                exp_bits,
                modulus,
            })
        } else {
            None
        }
    }

    #[inline]
    fn entry(&self, x: u128, j: usize) -> u64 {
        ((x >> (j as u32 * self.entry_bits)) & ((1u128 << self.entry_bits) - 1)) as u64
    }

    fn pack(&self, m: &MonomialMatrix) -> u128 {
        let mut out = 0u128;
        for j in 0..self.dim {
            let exp = m.phases()[j].exponent_in(self.modulus as i64) as u64;
            let entry = ((m.perm()[j] as u64) << self.exp_bits) | exp;
            out |= (entry as u128) << (j as u32 * self.entry_bits);
        }
        out
    }

    fn unpack(&self, x: u128) -> MonomialMatrix {
        let mut perm = Vec::with_capacity(self.dim);
        let mut phases = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let entry = self.entry(x, j);
            perm.push((entry >> self.exp_bits) as u32);
            phases.push(Phase::new((entry & self.exp_mask()) as i64, self.modulus as i64));
        }
        MonomialMatrix::new(perm, phases).expect("packed form is a bijection")
    }

    #[inline]
    fn exp_mask(&self) -> u64 {
        (1u64 << self.exp_bits).wrapping_sub(1)
    }

    fn identity(&self) -> u128 {
        let mut out = 0u128;
        for j in 0..self.dim {
            out |= ((j as u128) << self.exp_bits) << (j as u32 * self.entry_bits);
        }
        out
    }

    fn inverse(&self, x: u128) -> u128 {
        let mut out = 0u128;
        for j in 0..self.dim {
            let entry = self.entry(x, j);
            let target = (entry >> self.exp_bits) as usize;
            let exp = entry & self.exp_mask();
            let inv_exp = if exp == 0 { 0 } else { self.modulus - exp };
            let new_entry = ((j as u64) << self.exp_bits) | inv_exp;
            out |= (new_entry as u128) << (target as u32 * self.entry_bits);
        }
        out
    }

    /// `a * b` (apply `b` first).
    #[inline]
    fn compose(&self, a: u128, b: u128) -> u128 {
        let mut out = 0u128;
        let mask = self.exp_mask();
        for j in 0..self.dim {
            let be = self.entry(b, j);
            let mid = (be >> self.exp_bits) as usize;
            let ae = self.entry(a, mid);
            let mut exp = (ae & mask) + (be & mask);
            if exp >= self.modulus {
                exp -= self.modulus;
            }
            let entry = (ae & !mask) | exp;
            out |= (entry as u128) << (j as u32 * self.entry_bits);
        }
        out
    }

    fn write_perm(&self, x: u128, out: &mut Vec<u32>) {
        out.clear();
        for j in 0..self.dim {
            out.push((self.entry(x, j) >> self.exp_bits) as u32);
        }
    }
}

/// Fallback encoding over the fixed common denominator, for dimensions or
/// phase orders too large for [`SmallCodec`].
#[derive(Clone, PartialEq, Eq, Hash)]
struct PackedMonomial {
    perm: Vec<u32>,
    exps: Vec<u64>,
}

impl PackedMonomial {
    fn pack(m: &MonomialMatrix, modulus: i64) -> Self {
        PackedMonomial {
            perm: m.perm().to_vec(),
            exps: m
                .phases()
                .iter()
                .map(|p| p.exponent_in(modulus) as u64)
                .collect(),
        }
    }

    fn unpack(&self, modulus: i64) -> MonomialMatrix {
        let phases = self
            .exps
            .iter()
            .map(|&e| Phase::new(e as i64, modulus))
            .collect();
        MonomialMatrix::new(self.perm.clone(), phases).expect("packed form is a bijection")
    }

    fn identity(dim: usize) -> Self {
        PackedMonomial {
            perm: (0..dim as u32).collect(),
            exps: vec![0; dim],
        }
    }

    fn inverse(&self, modulus: u64) -> Self {
        let d = self.perm.len();
        let mut perm = vec![0u32; d];
        let mut exps = vec![0u64; d];
        for j in 0..d {
            let t = self.perm[j] as usize;
            perm[t] = j as u32;
            exps[t] = (modulus - self.exps[j]) % modulus;
        }
        PackedMonomial { perm, exps }
    }

    /// `out = self * rhs` (apply `rhs` first).
    fn compose_into(&self, rhs: &Self, modulus: u64, out: &mut Self) {
        let d = self.perm.len();
        out.perm.clear();
        out.exps.clear();
        for j in 0..d {
            let mid = rhs.perm[j] as usize;
            out.perm.push(self.perm[mid]);
            let e = rhs.exps[j] + self.exps[mid];
            out.exps.push(if e >= modulus { e - modulus } else { e });
        }
    }
}

/// Completed closure in packed form; the exact-sequence analysis reads
/// permutation parts straight out of this without materializing matrices.
enum PackedElements {
    Small(SmallCodec, Vec<u128>),
    Big(i64, Vec<PackedMonomial>),
}

impl PackedElements {
    fn len(&self) -> usize {
        match self {
            PackedElements::Small(_, v) => v.len(),
            PackedElements::Big(_, v) => v.len(),
        }
    }

    fn write_perm(&self, idx: usize, out: &mut Vec<u32>) {
        match self {
            PackedElements::Small(codec, v) => codec.write_perm(v[idx], out),
            PackedElements::Big(_, v) => {
                out.clear();
                out.extend_from_slice(&v[idx].perm);
            }
        }
    }

    fn unpack_all(&self) -> Vec<MonomialMatrix> {
        match self {
            PackedElements::Small(codec, v) => v.iter().map(|&x| codec.unpack(x)).collect(),
            PackedElements::Big(modulus, v) => v.iter().map(|p| p.unpack(*modulus)).collect(),
        }
    }
}

enum PackedOutcome {
    Complete(PackedElements),
    LimitExceeded,
}

fn closure_packed(generators: &[MonomialMatrix], limit: usize) -> Result<PackedOutcome> {
    if generators.is_empty() {
        return Err(Error::EmptyInput("generators"));
    }
    let dim = generators[0].dim();
    let mut modulus: i64 = 1;
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch(dim, g.dim()));
        }
        for p in g.phases() {
            modulus = modulus
                .checked_mul(p.order() / num_integer::gcd(modulus, p.order()))
                .filter(|&m| m < (1 << 50))
                .ok_or(Error::OrderOverflow)?;
        }
    }
    let m_u = modulus as u64;

    if let Some(codec) = SmallCodec::fits(dim, m_u) {
        let mut step: Vec<u128> = Vec::with_capacity(2 * generators.len());
        for g in generators {
            let packed = codec.pack(g);
            let inv = codec.inverse(packed);
            if !step.contains(&packed) {
                step.push(packed);
            }
            if !step.contains(&inv) {
                step.push(inv);
            }
        }
        let outcome = bfs_closure(&step, codec.identity(), limit, |a, b, out| {
            *out = codec.compose(*a, *b);
        });
        return Ok(match outcome {
            Some(elements) => PackedOutcome::Complete(PackedElements::Small(codec, elements)),
            None => PackedOutcome::LimitExceeded,
        });
    }

    let mut step: Vec<PackedMonomial> = Vec::with_capacity(2 * generators.len());
    for g in generators {
        let packed = PackedMonomial::pack(g, modulus);
        let inv = packed.inverse(m_u);
        if !step.contains(&packed) {
            step.push(packed);
        }
        if !step.contains(&inv) {
            step.push(inv);
        }
    }
    let outcome = bfs_closure(
        &step,
        PackedMonomial::identity(dim),
        limit,
        |a, b, out| a.compose_into(b, m_u, out),
    );
    Ok(match outcome {
        Some(elements) => PackedOutcome::Complete(PackedElements::Big(modulus, elements)),
        None => PackedOutcome::LimitExceeded,
    })
}

/// Breadth-first closure of exact monomial generators under multiplication by
/// the generators and their inverses, starting from the identity.
///
/// Elements are deduplicated by canonical form (permutation array plus phase
/// exponents over the common denominator), so the resulting element set — and
/// hence the order — is independent of generator listing order and of how the
/// parallel frontier expansion is scheduled. `LimitExceeded` is returned as
/// soon as the seen-set outgrows `limit`.
pub fn closure(
    generators: &[MonomialMatrix],
    limit: usize,
) -> Result<ClosureOutcome<MonomialMatrix>> {
    Ok(match closure_packed(generators, limit)? {
        PackedOutcome::Complete(set) => ClosureOutcome::Complete(set.unpack_all()),
        PackedOutcome::LimitExceeded => ClosureOutcome::LimitExceeded,
    })
}

/// Closure for generators without an exact form (the R1 family). Elements are
/// deduplicated by entries rounded to a 1e-8 grid; on every key hit the stored
/// element is re-compared at 1e-10, so a grid collision between genuinely
/// distinct elements is detected and reported rather than silently merged.
pub fn closure_dense(
    generators: &[DenseMatrix],
    limit: usize,
) -> Result<ClosureOutcome<DenseMatrix>> {
    if generators.is_empty() {
        return Err(Error::EmptyInput("generators"));
    }
    let dim = generators[0].dim();
    for g in generators {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch(dim, g.dim()));
        }
    }
    let key = |m: &DenseMatrix| -> Vec<(i64, i64)> {
        let mut out = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let z = m.get(i, j);
                out.push((
                    (z.re / tol::HASH_GRID).round() as i64,
                    (z.im / tol::HASH_GRID).round() as i64,
                ));
            }
        }
        out
    };

    let mut step: Vec<DenseMatrix> = Vec::new();
    for g in generators {
        step.push(g.clone());
        step.push(g.dagger()); // unitary: inverse = dagger
    }

    let mut seen: std::collections::HashMap<Vec<(i64, i64)>, usize> =
        std::collections::HashMap::new();
    let mut elements = vec![DenseMatrix::identity(dim)];
    seen.insert(key(&elements[0]), 0);
    let mut frontier = vec![0usize];

    while !frontier.is_empty() {
        if elements.len() > limit {
            return Ok(ClosureOutcome::LimitExceeded);
        }
        let mut next = Vec::new();
        for &idx in &frontier {
            for g in &step {
                let p = elements[idx].mul(g);
                let k = key(&p);
                if let Some(&existing) = seen.get(&k) {
                    if elements[existing].max_diff(&p) > tol::EXACT_EQ {
                        return Err(Error::HashCollision(tol::EXACT_EQ));
                    }
                } else {
                    let id = elements.len();
                    elements.push(p);
                    seen.insert(k, id);
                    next.push(id);
                }
            }
        }
        frontier = next;
    }
    if elements.len() > limit {
        return Ok(ClosureOutcome::LimitExceeded);
    }
    Ok(ClosureOutcome::Complete(elements))
}

/// Order of the subgroup of `(Z_N)^d` generated by the given exponent
/// vectors, computed from the Smith normal form of the stacked matrix
/// `[G; N I]`: the order is `prod_i (N / d_i)` over the invariant factors.
pub fn diagonal_subgroup_order(generators: &[Vec<i64>], modulus: i64) -> Result<u128> {
    if modulus < 1 {
        return Err(Error::BadModulus(modulus));
    }
    let Some(first) = generators.first() else {
        return Ok(1);
    };
    let d = first.len();
    for g in generators {
        if g.len() != d {
            return Err(Error::DimensionMismatch(d, g.len()));
        }
    }
    if d == 0 {
        return Ok(1);
    }
    let mut stacked: Vec<Vec<i128>> = generators
        .iter()
        .map(|g| g.iter().map(|&e| e.rem_euclid(modulus) as i128).collect())
        .collect();
    for i in 0..d {
        let mut row = vec![0i128; d];
        row[i] = modulus as i128;
        stacked.push(row);
    }
    let factors = snf::invariant_factors(stacked);
    debug_assert_eq!(factors.len(), d);
    let mut order: u128 = 1;
    for &f in &factors {
        // N I is in the row space, so every factor is a nonzero divisor of N
        if f == 0 || (modulus as i128) % f != 0 {
            return Err(Error::Unsupported(format!(
                "invariant factor {f} does not divide modulus {modulus}"
            )));
        }
        order = order
            .checked_mul((modulus as i128 / f) as u128)
            .ok_or(Error::OrderOverflow)?;
    }
    Ok(order)
}

/// The element of `S_n` induced by the permutation part on bit positions, if
/// any: returns `s` (as images `s[j]` of slots `j = 0..n`) such that basis
/// bitstring `b` maps to `b compose s^{-1}`, i.e. bit `j` moves to bit `s[j]`.
pub fn slot_permutation(m: &MonomialMatrix, n: usize) -> Result<Vec<usize>> {
    if m.dim() != 1usize << n {
        return Err(Error::WrongDimension {
            expected: 1usize << n,
            got: m.dim(),
        });
    }
    slot_permutation_of(m.perm(), n)
}

fn slot_permutation_of(perm: &[u32], n: usize) -> Result<Vec<usize>> {
    let mut s = vec![0usize; n];
    let mut hit = vec![false; n];
    for j in 0..n {
        let target = perm[1usize << j] as usize;
        if !target.is_power_of_two() {
            return Err(Error::NotSlotPermutation);
        }
        let t = target.trailing_zeros() as usize;
        if hit[t] {
            return Err(Error::NotSlotPermutation);
        }
        hit[t] = true;
        s[j] = t;
    }
    // verify on the full basis, not just the weight-one states
    for t in 0..m.dim() {
        let mut mapped = 0usize;
        for j in 0..n {
            if (t >> j) & 1 == 1 {
                mapped |= 1 << s[j];
            }
        }
        if perm[t] as usize != mapped {
            return Err(Error::NotSlotPermutation);
        }
    }
    Ok(s)
}

/// Enumerated image data and the exact-sequence verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupReport {
    pub n: usize,
    #[serde(rename = "order_Bn")]
    pub order_bn: GroupOrder,
    #[serde(rename = "order_Pn")]
    pub order_pn: u128,
    pub pn_abelian: bool,
    pub pn_diagonal: bool,
    /// Size of the image in `S_n`; `None` when the closure hit the limit.
    pub quotient_order: Option<u128>,
    pub sn_surjective: bool,
    pub exact_sequence_holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Exact(u128),
    LimitExceeded,
}

impl GroupOrder {
    pub fn exact(&self) -> Option<u128> {
        match self {
            GroupOrder::Exact(v) => Some(*v),
            GroupOrder::LimitExceeded => None,
        }
    }
}

impl Serialize for GroupOrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GroupOrder::Exact(v) => v.serialize(s),
            GroupOrder::LimitExceeded => "limit exceeded".serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for GroupOrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = GroupOrder;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "a group order or \"limit exceeded\"")
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<GroupOrder, E> {
                Ok(GroupOrder::Exact(v as u128))
            }

            fn visit_u128<E: serde::de::Error>(self, v: u128) -> std::result::Result<GroupOrder, E> {
                Ok(GroupOrder::Exact(v))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<GroupOrder, E> {
                if v == "limit exceeded" {
                    Ok(GroupOrder::LimitExceeded)
                } else {
                    Err(E::custom(format!(
                        "expected an order or \"limit exceeded\", got {v:?}"
                    )))
                }
            }
        }
        d.deserialize_any(V)
    }
}

impl std::fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupOrder::Exact(v) => write!(f, "{v}"),
            GroupOrder::LimitExceeded => write!(f, "limit exceeded"),
        }
    }
}

pub fn factorial_u128(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Verify the exact sequence `1 -> Im(P_n) -> Im(B_n) -> S_n -> 1` for a
/// solution with an exact monomial form.
///
/// `Im(P_n)` is measured through [`diagonal_subgroup_order`] on the
/// represented pure-braid generators; `Im(B_n)` by [`closure`] up to `limit`.
/// When the closure completes, the report also checks that every element
/// induces a slot permutation, that the induced set is all of `S_n`, and that
/// the kernel (trivial slot permutation) is exactly the diagonal elements,
/// whose count must equal `|Im(P_n)|`.
pub fn exact_sequence_report(sol: &YbeSolution, n: usize, limit: usize) -> Result<GroupReport> {
    if n < 2 {
        return Err(Error::Unsupported(format!(
            "exact sequence analysis needs n >= 2, got {n}"
        )));
    }
    let sigma_gens = braid::monomial_generators(sol, n)?;

    let pure_images: Vec<MonomialMatrix> = braid::pure_braid_generators(n)?
        .iter()
        .map(|w| {
            braid::represent(sol, w).map(|rep| {
                rep.as_monomial()
                    .expect("monomial solution represents monomially")
                    .clone()
            })
        })
        .collect::<Result<_>>()?;

    let pn_diagonal = pure_images.iter().all(MonomialMatrix::is_diagonal);
    let mut pn_abelian = true;
    'outer: for (i, a) in pure_images.iter().enumerate() {
        for b in pure_images.iter().skip(i + 1) {
            if a.compose(b)? != b.compose(a)? {
                pn_abelian = false;
                break 'outer;
            }
        }
    }

    let order_pn = if pn_diagonal {
        let mut modulus: i64 = 1;
        for m in &pure_images {
            for p in m.phases() {
                modulus = modulus.lcm(&p.order());
            }
        }
        let vectors: Vec<Vec<i64>> = pure_images
            .iter()
            .map(|m| m.phases().iter().map(|p| p.exponent_in(modulus)).collect())
            .collect();
        diagonal_subgroup_order(&vectors, modulus)?
    } else {
        match closure(&pure_images, limit)? {
            ClosureOutcome::Complete(els) => els.len() as u128,
            ClosureOutcome::LimitExceeded => 0,
        }
    };

    let outcome = closure(&sigma_gens, limit)?;
    let order_bn = outcome.order();
    let (quotient_order, sn_surjective, kernel_matches) = match outcome.elements() {
        Some(elements) => {
            let mut perms: HashSet<Vec<usize>> = HashSet::new();
            let mut diagonal_count: u128 = 0;
            let mut kernel_count: u128 = 0;
            let mut all_slots = true;
            for e in elements {
                match slot_permutation(e, n) {
                    Ok(s) => {
                        let is_id = s.iter().enumerate().all(|(j, &t)| j == t);
                        if is_id {
                            kernel_count += 1;
                        }
                        perms.insert(s);
                    }
                    Err(_) => {
                        all_slots = false;
                        break;
                    }
                }
                if e.is_diagonal() {
                    diagonal_count += 1;
                }
            }
            if all_slots {
                let quotient = perms.len() as u128;
                let surjective = quotient == factorial_u128(n);
                let kernel_matches = kernel_count == diagonal_count && diagonal_count == order_pn;
                (Some(quotient), surjective, kernel_matches)
            } else {
                (None, false, false)
            }
        }
        None => (None, false, false),
    };

    let counts_match = order_bn.exact() == order_pn.checked_mul(factorial_u128(n));
    let exact_sequence_holds =
        pn_diagonal && pn_abelian && sn_surjective && kernel_matches && counts_match;

    Ok(GroupReport {
        n,
        order_bn,
        order_pn,
        pn_abelian,
        pn_diagonal,
        quotient_order,
        sn_surjective,
        exact_sequence_holds,
    })
}

/// On-disk cache of group reports keyed by solution parameters and strand
/// count. Stores orders and verdicts only, never element sets.
pub mod report_cache {
    use super::*;
    use crate::ybe::SolutionSpec;
    use std::collections::BTreeMap;

    pub type Cache = BTreeMap<String, GroupReport>;

    pub fn key(spec: &SolutionSpec, n: usize) -> String {
        let params = serde_json::to_string(spec).expect("spec serializes");
        format!("{params}@n={n}")
    }

    pub fn load(path: &Path) -> Result<Cache> {
        if !path.exists() {
            return Ok(Cache::new());
        }
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Unsupported(format!("cache read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Unsupported(format!("cache parse {}: {e}", path.display())))
    }

    pub fn save(path: &Path, cache: &Cache) -> Result<()> {
        let text = serde_json::to_string_pretty(cache).expect("cache serializes");
        std::fs::write(path, text)
            .map_err(|e| Error::Unsupported(format!("cache write {}: {e}", path.display())))
    }
}
