use crate::limits::{LimitError, Limits};

use super::{Bicyclic, FreeGen, Item, ProductWord, Universe};

/// All words of length `<= m` with free-generator indices `<= k`, in
/// length-lexicographic order.
///
/// `L_m` itself is infinite once `BC` is involved, so bicyclic blocks are
/// restricted to `a + b <= m * limits.exponent_factor`. `k == 0` is accepted
/// and yields words without free generators. The free group has no
/// enumeration here and yields an empty list.
pub fn enumerate_words(m: usize, k: u32, universe: Universe, limits: &Limits) -> Result<Vec<ProductWord>, LimitError> {
    Limits::check("m", m, limits.max_len)?;
    Limits::check("k", k as usize, limits.max_index as usize)?;

    let with_gens = matches!(universe, Universe::Free | Universe::Product);
    let with_bc = matches!(universe, Universe::Bicyclic | Universe::Product);
    if universe == Universe::FreeGroup {
        return Ok(Vec::new());
    }

    let gens: Vec<FreeGen> =
        if with_gens { (1..=k).flat_map(|n| [FreeGen::t(n), FreeGen::t_star(n)]).collect() } else { Vec::new() };
    let blocks: Vec<Bicyclic> = if with_bc {
        let bound = (m as u64).saturating_mul(limits.exponent_factor);
        (1..=bound).flat_map(|total| (0..=total).map(move |a| Bicyclic::new(a, total - a))).collect()
    } else {
        Vec::new()
    };

    let mut all = vec![ProductWord::identity()];
    let mut layer = vec![ProductWord::identity()];
    for _ in 0..m {
        let mut next = Vec::new();
        for w in &layer {
            for &g in &gens {
                let mut v = w.clone();
                v.push_item(Item::Free(g));
                next.push(v);
            }
            if !matches!(w.items().last(), Some(Item::Bc(_))) {
                for &b in &blocks {
                    let mut v = w.clone();
                    v.push_item(Item::Bc(b));
                    next.push(v);
                }
            }
            Limits::check("enumerated words", all.len() + next.len(), limits.max_words)?;
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort();
    Ok(all)
}
