use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canvas::Canvas;
use super::{base_step, ring_cells, ConstructError};
use crate::cyclotomic::{key_add, key_is_zero, CycInt, Key, MAX_ORDER};
use crate::model::{validate, FractalSpec};

/// Largest ring scale tried before giving up.
const MAX_SCALE: i64 = 16;

/// Consecutive rejected orbits that count as a stall.
const STALL: usize = 150;

/// Every translation that makes two cells share exactly one vertex.
fn legal_steps(k: usize) -> Vec<CycInt> {
    let step = base_step(k);
    let mut steps: Vec<CycInt> = (0..k as i64).map(|j| step.rotate(j)).collect();
    if k % 2 == 1 {
        steps.extend((0..k as i64).map(|j| step.neg().rotate(j)));
    }
    steps
}

/// Seeded random configuration with `target` cells or more.
///
/// Without `symmetrize` the result is a partial spec grown one legal step at
/// a time from a cell at the origin, with exactly `target` cells. With it,
/// growth starts from a scaled ring (a cross for `k = 4`) and adds whole
/// dihedral orbits that stay inside the hull, so the result is a full,
/// centred spec that may overshoot `target`.
pub fn random_valid_spec(
    k: usize,
    target: usize,
    seed: u64,
    symmetrize: bool,
) -> Result<FractalSpec, ConstructError> {
    if !(3..=MAX_ORDER).contains(&k) {
        return Err(ConstructError::OrderOutOfRange(k));
    }
    if !(1..=100).contains(&target) {
        return Err(ConstructError::TargetOutOfRange(target));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let steps = legal_steps(k);
    let budget = 400 + 40 * target;
    let unreachable = ConstructError::TargetUnreachable { k, target };

    let spec = if symmetrize {
        // a larger hull leaves room for more orbits, so stalls move up a scale
        let first = rng.gen_range(1..=3);
        let mut grown = None;
        let mut attempts = 0;
        for scale in first..=MAX_SCALE {
            let (mut canvas, radius) = symmetric_base(k, scale);
            let mut misses = 0;
            while canvas.len() < target && misses < STALL && attempts < budget {
                attempts += 1;
                misses += 1;
                let parent = &canvas.cells()[rng.gen_range(0..canvas.len())];
                let candidate = parent.try_add(&steps[rng.gen_range(0..steps.len())])?;
                if add_orbit(&mut canvas, &candidate, radius) {
                    misses = 0;
                }
            }
            if canvas.len() >= target {
                grown = Some(canvas);
                break;
            }
        }
        FractalSpec::new(k, grown.ok_or(unreachable.clone())?.into_cells(), false)?
    } else {
        let mut canvas = Canvas::new(k);
        canvas.push(CycInt::zero(k));
        let mut attempts = 0;
        while canvas.len() < target {
            attempts += 1;
            if attempts > budget {
                return Err(unreachable);
            }
            let parent = &canvas.cells()[rng.gen_range(0..canvas.len())];
            let candidate = parent.try_add(&steps[rng.gen_range(0..steps.len())])?;
            canvas.try_push(candidate);
        }
        FractalSpec::new(k, canvas.into_cells(), true)?
    };
    if validate(&spec).is_valid() {
        Ok(spec)
    } else {
        Err(unreachable)
    }
}

/// Starting configuration scaled by up to `scale`, with the circumradius of
/// the hull. Falls back to smaller scales if a chain would collide.
fn symmetric_base(k: usize, scale: i64) -> (Canvas, f64) {
    for s in (1..=scale).rev() {
        let mut canvas = Canvas::new(k);
        let ok = if k == 4 {
            let mut ok = canvas.try_push(CycInt::zero(4));
            for t in 1..=s {
                for j in 0..4 {
                    ok &= canvas.try_push(CycInt::root(4, j).try_scale(2 * t).expect("small"));
                }
            }
            ok
        } else {
            let ring = ring_cells(k);
            // ring order: corners alone, or corner j followed by connector j
            let order: Vec<CycInt> = if ring.len() == k {
                ring
            } else {
                (0..k).flat_map(|j| [ring[j].clone(), ring[k + j].clone()]).collect()
            };
            let mut ok = true;
            for (i, a) in order.iter().enumerate() {
                let b = &order[(i + 1) % order.len()];
                let step = b.try_sub(a).expect("small");
                let start = a.try_scale(s).expect("small");
                for t in 0..s {
                    ok &= canvas.try_push(start.try_add(&step.try_scale(t).expect("small")).expect("small"));
                }
            }
            ok
        };
        if ok {
            // the outermost cell on the positive real axis is the corner
            let corner = if k == 4 { canvas.cells()[4 * s as usize - 3].clone() } else { canvas.cells()[0].clone() };
            let radius = canvas.ctx().xy(&corner).0 + 1.0;
            return (canvas, radius);
        }
    }
    unreachable!("the unscaled ring always fits")
}

/// Adds the dihedral orbit of `candidate` unless an image collides, leaves
/// the hull or touches the centre illegally.
fn add_orbit(canvas: &mut Canvas, candidate: &CycInt, radius: f64) -> bool {
    let k = candidate.order();
    let ctx = canvas.ctx();
    let mut images: BTreeMap<Key, CycInt> = BTreeMap::new();
    for j in 0..k as i64 {
        for image in [candidate.rotate(j), candidate.reflect(j)] {
            images.entry(ctx.key(&image)).or_insert(image);
        }
    }
    for (key, image) in &images {
        if !canvas.axes().contained_in_scaled(ctx.xy(image), radius) {
            return false;
        }
        if key_is_zero(key) && !matches!(k, 3 | 4 | 6) {
            return false;
        }
        if k > 3 && (0..k).any(|j| key_is_zero(&key_add(key, ctx.root_key(j)))) {
            return false;
        }
        if !canvas.fits(image) {
            return false;
        }
    }
    // images must also avoid each other
    let mut orbit = Canvas::new(k);
    if !images.values().all(|image| orbit.try_push(image.clone())) {
        return false;
    }
    for image in images.into_values() {
        canvas.push(image);
    }
    true
}
