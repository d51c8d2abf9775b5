use super::lift::restrict_module;
use super::MorphismId;
use crate::exactlin::{rat_one, SVec, SvAcc};
use crate::graphkit::perm;
use crate::graphkit::{canonicalize_cached, Iso, Window};
use crate::opcore::{transport, FreeOp, QuadraticDatum, Relations};

fn invert(iso: &Iso) -> Iso {
    let n = iso.vmap.len();
    let mut vmap = vec![0; n];
    let mut slot_perms = vec![Vec::new(); n];
    for (x, &t) in iso.vmap.iter().enumerate() {
        vmap[t] = x;
        slot_perms[t] = perm::inverse(&iso.slot_perms[x]);
    }
    Iso { vmap, slot_perms, sign: iso.sign }
}

/// Replaces every weight-1 graph summand of each relation by the sum of its source-flavor
/// preimages over each source signature, labels carried along.
pub fn sigma_relations(m: MorphismId, q: &QuadraticDatum, source: &Window) -> Relations {
    let ft = q.weight_one();
    let fs = FreeOp::new(restrict_module(m, &q.gens, source), source.with_max_degree(1), q.odd);
    let mut out = Relations::new();
    for w in source.sigs() {
        let v = m.sig_map(w);
        let Some(rels) = q.rels.get(&v) else { continue };
        if !ft.window.contains(v) {
            continue;
        }
        let (ss, st) = (fs.space(w), ft.space(v));
        // (source block, target block, inverse transport) for each weight-1 source class
        let mut matches = Vec::new();
        for (bs, c) in ss.blocks.iter().enumerate() {
            if c.degree() != 1 {
                continue;
            }
            let raw = m.graph_map(&c.class.graph);
            let canon = canonicalize_cached(&raw);
            let Some(bt) = st.block_of(&canon.key) else { continue };
            matches.push((bs, bt, invert(&canon.iso(&raw, &c.class.edges))));
        }
        let mapped: Vec<SVec> = rels
            .iter()
            .map(|r| {
                let by_block = st.by_block(r);
                let mut acc = SvAcc::new();
                for (bs, bt, inv) in &matches {
                    let Some((_, local)) = by_block.iter().find(|(b, _)| b == bt) else { continue };
                    let tensor = st.lift_local(*bt, local);
                    let tb = &st.blocks[*bt];
                    let back = transport(&tensor, &tb.shape, &tb.vsigs, inv, &ss.blocks[*bs].shape, &q.gens, q.odd);
                    acc.add_vec(&ss.project_into(*bs, &back), &rat_one());
                }
                acc.finish()
            })
            .filter(|v| !v.is_empty())
            .collect();
        if !mapped.is_empty() {
            out.insert(w, mapped);
        }
    }
    out
}

/// `R^!` of a quadratic datum: generators `rE`, relations `sigma(S)`, same parity.
pub fn shriek_pullback(m: MorphismId, q: &QuadraticDatum, source: &Window) -> QuadraticDatum {
    QuadraticDatum {
        name: format!("R!({})", q.name),
        gens: restrict_module(m, &q.gens, source),
        rels: sigma_relations(m, q, source),
        odd: q.odd,
        window: *source,
    }
}
