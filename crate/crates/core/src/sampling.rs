//! Seeded random frames, propositions and masses for property checks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::{AtomSet, Frame, MassFunction, Model, ModelKind, Proposition};

/// Frame with atoms `A`, `B`, `C`, … (then `T16`, … past `Z`).
pub fn frame(n: usize) -> Frame {
    let names: Vec<String> = (0..n)
        .map(|i| {
            if i < 26 {
                String::from(char::from(b'A' + i as u8))
            } else {
                format!("T{i}")
            }
        })
        .collect();
    Frame::new(&names).expect("2 ≤ n ≤ 16")
}

fn random_atoms<R: Rng + ?Sized>(rng: &mut R, n: usize) -> AtomSet {
    AtomSet(rng.gen_range(1..(1u32 << n)))
}

/// A random proposition that is non-empty under `model`.
///
/// On the exclusive model these are unions of atoms (the power set);
/// otherwise a union of one to three random atom meets.
pub fn proposition<R: Rng + ?Sized>(rng: &mut R, model: &Model) -> Proposition {
    let n = model.arity();
    loop {
        let p = if *model.kind() == ModelKind::Exclusive {
            Proposition::join_of(n, random_atoms(rng, n))
        } else {
            let k = rng.gen_range(1..=3);
            let terms: Vec<AtomSet> = (0..k).map(|_| random_atoms(rng, n)).collect();
            Proposition::from_terms(n, &terms)
        };
        if !model.is_empty(&p).expect("same frame") {
            return model.canonical(&p);
        }
    }
}

/// A random input mass with between one and `max_focal` focal elements.
pub fn mass<R: Rng + ?Sized>(rng: &mut R, model: &Model, max_focal: usize) -> MassFunction {
    let k = rng.gen_range(1..=max_focal.max(1));
    let mut picked: BTreeMap<Proposition, f64> = BTreeMap::new();
    for _ in 0..k {
        picked.insert(proposition(rng, model), rng.gen_range(0.05..1.0));
    }
    let total: f64 = picked.values().sum();
    MassFunction::new(model, picked.into_iter().map(|(p, w)| (p, w / total)))
        .expect("normalized by construction")
}

/// `count` random sources.
pub fn masses<R: Rng + ?Sized>(
    rng: &mut R,
    model: &Model,
    count: usize,
    max_focal: usize,
) -> Vec<MassFunction> {
    (0..count).map(|_| mass(rng, model, max_focal)).collect()
}

/// Either the free or the exclusive model over `frame`, or a custom model
/// with a random selection of exclusive pairs.
pub fn model<R: Rng + ?Sized>(rng: &mut R, frame: &Frame) -> Model {
    match rng.gen_range(0..3) {
        0 => Model::free(frame),
        1 => Model::exclusive(frame),
        _ => {
            let names = frame.atoms();
            let mut pairs: Vec<(&str, &str)> = Vec::new();
            for i in 0..names.len() {
                for j in (i + 1)..names.len() {
                    pairs.push((&names[i], &names[j]));
                }
            }
            pairs.shuffle(rng);
            let keep = rng.gen_range(1..=pairs.len());
            pairs.truncate(keep);
            Model::exclusive_pairs(frame, &pairs).expect("atoms from the frame")
        }
    }
}
