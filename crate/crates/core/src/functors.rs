//! The six functors between `Z/N`-modules and quiver representations.
//!
//! Evaluation `e_i` has a left adjoint `f_i` (path-indexed coproducts) and
//! a right adjoint `g_i` (path-indexed products). The stalk functor `s_i`
//! has a left adjoint `c_i = coker(phi_i)` and a right adjoint
//! `k_i = ker(psi_i)`. Each adjunction comes with an explicit witness
//! carrying the two Hom groups and the mutually inverse maps between them.
//!
//! Blocks of the path-indexed constructions are keyed by paths, so the
//! arrow action is the key rewrite `p ↦ ap` (respectively `q ↦ qa`). The
//! forward/backward BFS block orders are aligned so that `g_i` literally
//! equals the opposite-transport of `f_i`.

use crate::quiver::{ArrowId, Path, Quiver, QuiverError, VertexId};
use crate::repcat::{cokernel_rep, hom_rep, kernel_rep, HomRep, RepMorphism, Representation};
use crate::zmod::{
    biproduct, cokernel, dual_map, factor_through_epi, factor_through_mono, free_cover,
    injective_embed, kernel, Biproduct, FiniteModule, HomCoords, ModuleMap, Ring,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::sync::Arc;

/// `e_i(X) = X(i)`.
pub fn evaluate(x: &Representation, i: &VertexId) -> FiniteModule {
    x.module_at(i).clone()
}

/// `s_i(M)`: `M` at vertex `i`, zero elsewhere, zero arrow maps.
pub fn stalk(m: &FiniteModule, i: &VertexId, quiver: &Arc<Quiver>) -> Representation {
    let ring = m.ring();
    let zero = FiniteModule::zero(ring);
    let modules: Vec<FiniteModule> =
        quiver.vertices.iter().map(|v| if v == i { m.clone() } else { zero.clone() }).collect();
    let maps = quiver
        .arrows
        .iter()
        .map(|a| {
            let s = quiver.vertex_index(&a.source).unwrap();
            let t = quiver.vertex_index(&a.target).unwrap();
            ModuleMap::zero(&modules[s], &modules[t])
        })
        .collect();
    Representation::new(quiver.clone(), ring, modules, maps)
}

/// A representation built from path-indexed blocks: at each vertex the
/// biproduct of one module per block, a block being (origin index, path).
/// Covers both `f_i` (single origin) and `⊕_j f_j(P_j)`.
pub struct PathIndexedRep {
    pub rep: Representation,
    /// per vertex, in biproduct order
    blocks: Vec<Vec<(usize, Path)>>,
    sums: Vec<Biproduct>,
}

impl PathIndexedRep {
    pub fn blocks_at(&self, vertex: usize) -> &[(usize, Path)] {
        &self.blocks[vertex]
    }

    pub fn block_position(&self, vertex: usize, origin: usize, key: &str) -> usize {
        self.blocks[vertex]
            .iter()
            .position(|(o, p)| *o == origin && p.key() == key)
            .expect("block not present")
    }

    pub fn injection(&self, vertex: usize, block: usize) -> &ModuleMap {
        &self.sums[vertex].injections[block]
    }

    pub fn projection(&self, vertex: usize, block: usize) -> &ModuleMap {
        &self.sums[vertex].projections[block]
    }
}

/// Blocks over paths leaving each origin: the value at `k` is
/// `⊕_o ⊕_{p ∈ Q(j_o, k)} M_o`, with the arrow action `p ↦ ap`.
pub fn path_block_rep(
    quiver: &Arc<Quiver>,
    ring: Ring,
    origins: &[(VertexId, FiniteModule)],
) -> Result<PathIndexedRep, QuiverError> {
    if !quiver.is_locally_path_finite() {
        return Err(QuiverError::NotPathFinite);
    }
    let nv = quiver.vertices.len();
    let mut blocks: Vec<Vec<(usize, Path)>> = vec![Vec::new(); nv];
    for (o, (j, _m)) in origins.iter().enumerate() {
        for p in crate::quiver::paths_from(quiver, j)? {
            let end = quiver.vertex_index(&p.end(quiver)).unwrap();
            blocks[end].push((o, p));
        }
    }
    let sums: Vec<Biproduct> = blocks
        .iter()
        .map(|bl| {
            let parts: Vec<FiniteModule> = bl.iter().map(|(o, _)| origins[*o].1.clone()).collect();
            biproduct(ring, &parts)
        })
        .collect();
    let modules: Vec<FiniteModule> = sums.iter().map(|b| b.module.clone()).collect();
    let maps = quiver
        .arrows
        .iter()
        .map(|a| {
            let k = quiver.vertex_index(&a.source).unwrap();
            let l = quiver.vertex_index(&a.target).unwrap();
            let mut map = ModuleMap::zero(&modules[k], &modules[l]);
            for (b, (o, p)) in blocks[k].iter().enumerate() {
                let extended = p.extend(a);
                let b2 = blocks[l]
                    .iter()
                    .position(|(o2, p2)| o2 == o && p2 == &extended)
                    .expect("extended path block missing");
                map = map.add(&sums[k].projections[b].then(&sums[l].injections[b2]));
            }
            map
        })
        .collect();
    let rep = Representation::new(quiver.clone(), ring, modules, maps);
    Ok(PathIndexedRep { rep, blocks, sums })
}

/// Blocks over paths into each origin: the value at `k` is
/// `⊕_o ⊕_{q ∈ Q(k, j_o)} M_o`; an arrow `a: k → l` projects block `q` of
/// the target from block `qa` of the source.
pub fn copath_block_rep(
    quiver: &Arc<Quiver>,
    ring: Ring,
    origins: &[(VertexId, FiniteModule)],
) -> Result<PathIndexedRep, QuiverError> {
    if !quiver.is_locally_path_finite() {
        return Err(QuiverError::NotPathFinite);
    }
    let nv = quiver.vertices.len();
    let mut blocks: Vec<Vec<(usize, Path)>> = vec![Vec::new(); nv];
    for (o, (j, _m)) in origins.iter().enumerate() {
        for q in crate::quiver::paths_into(quiver, j)? {
            let start = quiver.vertex_index(&q.start).unwrap();
            blocks[start].push((o, q));
        }
    }
    let sums: Vec<Biproduct> = blocks
        .iter()
        .map(|bl| {
            let parts: Vec<FiniteModule> = bl.iter().map(|(o, _)| origins[*o].1.clone()).collect();
            biproduct(ring, &parts)
        })
        .collect();
    let modules: Vec<FiniteModule> = sums.iter().map(|b| b.module.clone()).collect();
    let maps = quiver
        .arrows
        .iter()
        .map(|a| {
            let k = quiver.vertex_index(&a.source).unwrap();
            let l = quiver.vertex_index(&a.target).unwrap();
            let arrow = quiver.arrow(&a.id).unwrap();
            let mut map = ModuleMap::zero(&modules[k], &modules[l]);
            for (b2, (o, q)) in blocks[l].iter().enumerate() {
                let pre = q.precompose(arrow);
                let b = blocks[k]
                    .iter()
                    .position(|(o2, q2)| o2 == o && q2 == &pre)
                    .expect("precomposed path block missing");
                map = map.add(&sums[k].projections[b].then(&sums[l].injections[b2]));
            }
            map
        })
        .collect();
    let rep = Representation::new(quiver.clone(), ring, modules, maps);
    Ok(PathIndexedRep { rep, blocks, sums })
}

/// `f_i(M)`, with block bookkeeping retained.
pub fn f_functor_indexed(
    m: &FiniteModule,
    i: &VertexId,
    quiver: &Arc<Quiver>,
) -> Result<PathIndexedRep, QuiverError> {
    path_block_rep(quiver, m.ring(), &[(i.clone(), m.clone())])
}

/// The left adjoint of evaluation: `f_i(M)(j) = ⊕_{p ∈ Q(i,j)} M`.
pub fn f_functor(
    m: &FiniteModule,
    i: &VertexId,
    quiver: &Arc<Quiver>,
) -> Result<Representation, QuiverError> {
    Ok(f_functor_indexed(m, i, quiver)?.rep)
}

/// `g_i(M)`, with block bookkeeping retained.
pub fn g_functor_indexed(
    m: &FiniteModule,
    i: &VertexId,
    quiver: &Arc<Quiver>,
) -> Result<PathIndexedRep, QuiverError> {
    copath_block_rep(quiver, m.ring(), &[(i.clone(), m.clone())])
}

/// The right adjoint of evaluation: `g_i(M)(j) = ⊕_{q ∈ Q(j,i)} M`.
pub fn g_functor(
    m: &FiniteModule,
    i: &VertexId,
    quiver: &Arc<Quiver>,
) -> Result<Representation, QuiverError> {
    Ok(g_functor_indexed(m, i, quiver)?.rep)
}

/// The left adjoint of the stalk functor: `c_i(X) = Coker(phi_i)`, with
/// the canonical projection `X(i) → c_i(X)`.
pub fn c_functor(x: &Representation, i: &VertexId) -> (FiniteModule, ModuleMap) {
    cokernel(&x.phi(i))
}

/// The right adjoint of the stalk functor: `k_i(X) = Ker(psi_i)`, with the
/// canonical inclusion `k_i(X) → X(i)`.
pub fn k_functor(x: &Representation, i: &VertexId) -> (FiniteModule, ModuleMap) {
    kernel(&x.psi(i))
}

/// Transport a representation to the opposite quiver: vertex modules keep
/// their chains, each arrow map is replaced by its dual. Involutive.
pub fn dualize_rep(x: &Representation) -> Representation {
    let q_op = Arc::new(x.quiver().opposite());
    let modules: Vec<FiniteModule> =
        (0..q_op.vertices.len()).map(|v| x.module_at_index(v).clone()).collect();
    let maps = (0..q_op.arrows.len()).map(|k| dual_map(x.map_at_index(k))).collect();
    Representation::new(q_op, x.ring(), modules, maps)
}

/// Transport a morphism `λ: X → Y` to `D(Y) → D(X)` on the opposite quiver.
pub fn dualize_morphism(lambda: &RepMorphism) -> RepMorphism {
    let dy = dualize_rep(lambda.target());
    let dx = dualize_rep(lambda.source());
    let components = (0..dy.quiver().vertices.len())
        .map(|v| dual_map(lambda.component_at_index(v)))
        .collect();
    RepMorphism::new(dy, dx, components)
}

/// The module-category side of an adjunction witness.
pub struct ModuleHomSide {
    pub group: FiniteModule,
    coords: HomCoords,
}

impl ModuleHomSide {
    fn new(a: &FiniteModule, b: &FiniteModule) -> Self {
        let coords = HomCoords::new(a, b);
        let group = FiniteModule::from_factors(a.ring(), &coords.moduli());
        ModuleHomSide { group, coords }
    }

    pub fn all_elements(&self) -> Vec<ModuleMap> {
        self.coords.all_maps()
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> ModuleMap {
        let moduli = self.coords.moduli();
        let coords: Vec<u64> = moduli.iter().map(|&m| rng.gen_range(0..m)).collect();
        self.coords.map_from_coords(&coords)
    }
}

enum WitnessKind {
    /// `Hom(f_i(M), X) ≅ Hom(M, X(i))`
    FE { fm: PathIndexedRep, i: VertexId, x: Representation },
    /// `Hom(X, g_i(M)) ≅ Hom(X(i), M)`
    EG { gm: PathIndexedRep, i: VertexId, x: Representation },
    /// `Hom(X, s_i(M)) ≅ Hom(c_i(X), M)`
    CS { i: VertexId, rho: ModuleMap },
    /// `Hom(s_i(M), X) ≅ Hom(M, k_i(X))`
    SK { i: VertexId, incl: ModuleMap },
}

/// An adjunction witness: both Hom groups together with explicit mutually
/// inverse maps between them.
pub struct AdjunctionWitness {
    pub rep_hom: HomRep,
    pub module_hom: ModuleHomSide,
    kind: WitnessKind,
}

/// Outcome of verifying a witness extensionally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub rep_order: u128,
    pub module_order: u128,
    pub checked: usize,
    pub pass: bool,
}

impl AdjunctionWitness {
    /// The map from the representation-side Hom group to the module side.
    pub fn to_module(&self, lambda: &RepMorphism) -> ModuleMap {
        match &self.kind {
            WitnessKind::FE { fm, i, .. } => {
                // u(λ) = λ(i) ∘ ε_{e_i}
                let vi = lambda.source().quiver().vertex_index(i).unwrap();
                let pos = fm.block_position(vi, 0, &Path::trivial(i.clone()).key());
                fm.injection(vi, pos).then(lambda.component(i))
            }
            WitnessKind::EG { gm, i, .. } => {
                // u(λ) = π_{e_i} ∘ λ(i)
                let vi = lambda.source().quiver().vertex_index(i).unwrap();
                let pos = gm.block_position(vi, 0, &Path::trivial(i.clone()).key());
                lambda.component(i).then(gm.projection(vi, pos))
            }
            WitnessKind::CS { i, rho } => factor_through_epi(lambda.component(i), rho)
                .expect("stalk-valued component must factor through the cokernel"),
            WitnessKind::SK { i, incl } => factor_through_mono(lambda.component(i), incl)
                .expect("stalk-sourced component must factor through the kernel"),
        }
    }

    /// The map from the module-side Hom group to the representation side.
    pub fn to_rep(&self, alpha: &ModuleMap) -> RepMorphism {
        match &self.kind {
            WitnessKind::FE { fm, x, .. } => {
                // λ(j) ∘ ε_p = X(p) ∘ α for every path p out of i
                let q = x.quiver();
                let components = (0..q.vertices.len())
                    .map(|v| {
                        let mut comp =
                            ModuleMap::zero(fm.rep.module_at_index(v), x.module_at_index(v));
                        for (b, (_o, p)) in fm.blocks_at(v).iter().enumerate() {
                            comp =
                                comp.add(&fm.projection(v, b).then(&alpha.then(&x.path_action(p))));
                        }
                        comp
                    })
                    .collect();
                RepMorphism::new(fm.rep.clone(), x.clone(), components)
            }
            WitnessKind::EG { gm, x, .. } => {
                // π_q ∘ λ(j) = β ∘ X(q) for every path q into i
                let q = x.quiver();
                let components = (0..q.vertices.len())
                    .map(|v| {
                        let mut comp =
                            ModuleMap::zero(x.module_at_index(v), gm.rep.module_at_index(v));
                        for (b, (_o, p)) in gm.blocks_at(v).iter().enumerate() {
                            comp = comp.add(&x.path_action(p).then(alpha).then(gm.injection(v, b)));
                        }
                        comp
                    })
                    .collect();
                RepMorphism::new(x.clone(), gm.rep.clone(), components)
            }
            WitnessKind::CS { i, rho } => {
                // λ(i) = α ∘ ρ, zero elsewhere
                let x = self.rep_hom.source();
                let s = self.rep_hom.target();
                let q = x.quiver();
                let vi = q.vertex_index(i).unwrap();
                let components = (0..q.vertices.len())
                    .map(|v| {
                        if v == vi {
                            rho.then(alpha)
                        } else {
                            ModuleMap::zero(x.module_at_index(v), s.module_at_index(v))
                        }
                    })
                    .collect();
                RepMorphism::new(x.clone(), s.clone(), components)
            }
            WitnessKind::SK { i, incl } => {
                // λ(i) = ι ∘ β, zero elsewhere
                let s = self.rep_hom.source();
                let x = self.rep_hom.target();
                let q = x.quiver();
                let vi = q.vertex_index(i).unwrap();
                let components = (0..q.vertices.len())
                    .map(|v| {
                        if v == vi {
                            alpha.then(incl)
                        } else {
                            ModuleMap::zero(s.module_at_index(v), x.module_at_index(v))
                        }
                    })
                    .collect();
                RepMorphism::new(s.clone(), x.clone(), components)
            }
        }
    }

    /// Verify order equality and that the two maps are mutually inverse:
    /// on full enumerations when both orders are at most `full_bound`,
    /// otherwise on `samples` seeded random elements per side.
    pub fn verify(&self, full_bound: u128, samples: usize, seed: u64) -> WitnessReport {
        let rep_order = self.rep_hom.order();
        let module_order = self.module_hom.group.order();
        let mut pass = rep_order == module_order;
        let mut checked = 0;
        if pass {
            if rep_order <= full_bound && module_order <= full_bound {
                for lambda in self.rep_hom.all_elements() {
                    let alpha = self.to_module(&lambda);
                    pass &= self.to_rep(&alpha) == lambda;
                    checked += 1;
                }
                for alpha in self.module_hom.all_elements() {
                    let lambda = self.to_rep(&alpha);
                    pass &= lambda.validate();
                    pass &= self.to_module(&lambda) == alpha;
                    checked += 1;
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..samples {
                    let coeffs: Vec<u64> = self
                        .rep_hom
                        .group
                        .chain()
                        .iter()
                        .map(|&d| rng.gen_range(0..d))
                        .collect();
                    let lambda = self.rep_hom.element(&coeffs);
                    pass &= self.to_rep(&self.to_module(&lambda)) == lambda;
                    let alpha = self.module_hom.sample(&mut rng);
                    let lifted = self.to_rep(&alpha);
                    pass &= lifted.validate() && self.to_module(&lifted) == alpha;
                    checked += 2;
                }
            }
        }
        WitnessReport { rep_order, module_order, checked, pass }
    }
}

/// Witness for `f_i ⊣ e_i`: `Hom(f_i(M), X) ≅ Hom(M, X(i))`.
pub fn adjunction_fe(
    m: &FiniteModule,
    i: &VertexId,
    x: &Representation,
) -> Result<AdjunctionWitness, QuiverError> {
    let fm = f_functor_indexed(m, i, x.quiver())?;
    Ok(adjunction_fe_with(fm, i, x))
}

/// Same, reusing an already-built `f_i(M)`.
pub fn adjunction_fe_with(
    fm: PathIndexedRep,
    i: &VertexId,
    x: &Representation,
) -> AdjunctionWitness {
    let m = fm_origin_module(&fm);
    let rep_hom = hom_rep(&fm.rep, x);
    let module_hom = ModuleHomSide::new(&m, x.module_at(i));
    AdjunctionWitness {
        rep_hom,
        module_hom,
        kind: WitnessKind::FE { fm, i: i.clone(), x: x.clone() },
    }
}

fn fm_origin_module(fm: &PathIndexedRep) -> FiniteModule {
    // single-origin path block rep: the origin module is the block module
    // of any block; recover it from the trivial block if present, else zero
    for (v, blocks) in fm.blocks.iter().enumerate() {
        for (b, (_o, p)) in blocks.iter().enumerate() {
            if p.is_empty() {
                return fm.sums[v].injections[b].source().clone();
            }
        }
    }
    unreachable!("single-origin path block rep always contains the trivial path block")
}

/// Witness for `e_i ⊣ g_i`: `Hom(X, g_i(M)) ≅ Hom(X(i), M)`.
pub fn adjunction_eg(
    x: &Representation,
    i: &VertexId,
    m: &FiniteModule,
) -> Result<AdjunctionWitness, QuiverError> {
    let gm = g_functor_indexed(m, i, x.quiver())?;
    Ok(adjunction_eg_with(gm, x, i))
}

/// Same, reusing an already-built `g_i(M)`.
pub fn adjunction_eg_with(
    gm: PathIndexedRep,
    x: &Representation,
    i: &VertexId,
) -> AdjunctionWitness {
    let m = fm_origin_module(&gm);
    let rep_hom = hom_rep(x, &gm.rep);
    let module_hom = ModuleHomSide::new(x.module_at(i), &m);
    AdjunctionWitness { rep_hom, module_hom, kind: WitnessKind::EG { gm, i: i.clone(), x: x.clone() } }
}

/// Witness for `c_i ⊣ s_i`: `Hom(c_i(X), M) ≅ Hom(X, s_i(M))`.
pub fn adjunction_cs(x: &Representation, i: &VertexId, m: &FiniteModule) -> AdjunctionWitness {
    let (cok, rho) = c_functor(x, i);
    let s = stalk(m, i, x.quiver());
    let rep_hom = hom_rep(x, &s);
    let module_hom = ModuleHomSide::new(&cok, m);
    AdjunctionWitness { rep_hom, module_hom, kind: WitnessKind::CS { i: i.clone(), rho } }
}

/// Witness for `s_i ⊣ k_i`: `Hom(s_i(M), X) ≅ Hom(M, k_i(X))`.
pub fn adjunction_sk(m: &FiniteModule, i: &VertexId, x: &Representation) -> AdjunctionWitness {
    let (ker, incl) = k_functor(x, i);
    let s = stalk(m, i, x.quiver());
    let rep_hom = hom_rep(&s, x);
    let module_hom = ModuleHomSide::new(m, &ker);
    AdjunctionWitness { rep_hom, module_hom, kind: WitnessKind::SK { i: i.clone(), incl } }
}

/// The cover epimorphism only: `ρ: ⊕_j f_j(P_j) ↠ X`.
pub fn projective_cover_map(x: &Representation) -> Result<RepMorphism, QuiverError> {
    let q = x.quiver();
    let covers: Vec<ModuleMap> = q.vertices.iter().map(|v| free_cover(x.module_at(v))).collect();
    let origins: Vec<(VertexId, FiniteModule)> = q
        .vertices
        .iter()
        .zip(&covers)
        .map(|(v, c)| (v.clone(), c.source().clone()))
        .collect();
    let p = path_block_rep(q, x.ring(), &origins)?;
    // ρ on block (j, p): cover_j then X(p)
    let components: Vec<ModuleMap> = (0..q.vertices.len())
        .map(|v| {
            let mut comp = ModuleMap::zero(p.rep.module_at_index(v), x.module_at_index(v));
            for (b, (o, path)) in p.blocks_at(v).iter().enumerate() {
                comp = comp.add(&p.projection(v, b).then(&covers[*o].then(&x.path_action(path))));
            }
            comp
        })
        .collect();
    let rho = RepMorphism::new(p.rep.clone(), x.clone(), components);
    debug_assert!(rho.is_epic());
    Ok(rho)
}

/// Projective cover: `P = ⊕_j f_j(P_j)` with `P_j ↠ X(j)` the free covers,
/// the epimorphism `ρ: P ↠ X` assembled from the adjunction counits, and
/// its kernel.
pub fn projective_cover_rep(
    x: &Representation,
) -> Result<(Representation, RepMorphism, Representation), QuiverError> {
    let rho = projective_cover_map(x)?;
    let (k, _incl) = kernel_rep(&rho);
    Ok((rho.source().clone(), rho, k))
}

/// Injective envelope: `I = ⊕_j g_j(I_j)` with `X(j) ↪ I_j` the free
/// embeddings, the monomorphism `ι: X ↪ I`, and its cokernel.
pub fn injective_embed_rep(
    x: &Representation,
) -> Result<(Representation, RepMorphism, Representation), QuiverError> {
    let q = x.quiver();
    let embeds: Vec<ModuleMap> =
        q.vertices.iter().map(|v| injective_embed(x.module_at(v))).collect();
    let origins: Vec<(VertexId, FiniteModule)> = q
        .vertices
        .iter()
        .zip(&embeds)
        .map(|(v, e)| (v.clone(), e.target().clone()))
        .collect();
    let i_rep = copath_block_rep(q, x.ring(), &origins)?;
    // ι into block (j, q): X(q) then embed_j
    let components: Vec<ModuleMap> = (0..q.vertices.len())
        .map(|v| {
            let mut comp = ModuleMap::zero(x.module_at_index(v), i_rep.rep.module_at_index(v));
            for (b, (o, path)) in i_rep.blocks_at(v).iter().enumerate() {
                comp = comp.add(&x.path_action(path).then(&embeds[*o]).then(i_rep.injection(v, b)));
            }
            comp
        })
        .collect();
    let iota = RepMorphism::new(x.clone(), i_rep.rep.clone(), components);
    debug_assert!(iota.is_monic());
    let (c, _proj) = cokernel_rep(&iota);
    Ok((i_rep.rep, iota, c))
}

/// The cone of a family `ξ_a: X(s(a)) → M` over the arrows into `i`, with
/// its short exact sequence `0 → s_i(M) → C → X → 0`.
pub fn cone(
    x: &Representation,
    m: &FiniteModule,
    i: &VertexId,
    xi: &BTreeMap<ArrowId, ModuleMap>,
) -> (Representation, RepMorphism, RepMorphism) {
    let q = x.quiver();
    let ring = x.ring();
    let vi = q.vertex_index(i).expect("unknown vertex");
    for a in q.arrows_into(i).unwrap() {
        let xa = xi.get(&a.id).expect("missing xi component for an arrow into i");
        assert_eq!(xa.source(), x.module_at(&a.source), "xi source mismatch");
        assert_eq!(xa.target(), m, "xi target mismatch");
    }

    let center = biproduct(ring, &[x.module_at_index(vi).clone(), m.clone()]);
    let eps_x = &center.injections[0];
    let eps_m = &center.injections[1];
    let pi_x = &center.projections[0];

    let modules: Vec<FiniteModule> = (0..q.vertices.len())
        .map(|v| if v == vi { center.module.clone() } else { x.module_at_index(v).clone() })
        .collect();
    let maps: Vec<ModuleMap> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let ja = q.vertex_index(&a.source).unwrap();
            let ka = q.vertex_index(&a.target).unwrap();
            let xa = x.map_at_index(k);
            match (ja == vi, ka == vi) {
                (false, false) => xa.clone(),
                (false, true) => {
                    let xi_a = &xi[&a.id];
                    xa.then(eps_x).add(&xi_a.then(eps_m))
                }
                (true, false) => pi_x.then(xa),
                (true, true) => {
                    let xi_a = &xi[&a.id];
                    pi_x.then(&xa.then(eps_x).add(&xi_a.then(eps_m)))
                }
            }
        })
        .collect();
    let c = Representation::new(q.clone(), ring, modules, maps);

    let s = stalk(m, i, q);
    let iota_components: Vec<ModuleMap> = (0..q.vertices.len())
        .map(|v| {
            if v == vi {
                eps_m.clone()
            } else {
                ModuleMap::zero(s.module_at_index(v), c.module_at_index(v))
            }
        })
        .collect();
    let pi_components: Vec<ModuleMap> = (0..q.vertices.len())
        .map(|v| {
            if v == vi {
                pi_x.clone()
            } else {
                ModuleMap::identity(x.module_at_index(v))
            }
        })
        .collect();
    let iota = RepMorphism::new(s, c.clone(), iota_components);
    let pi = RepMorphism::new(c.clone(), x.clone(), pi_components);
    (c, iota, pi)
}

/// Whether an epimorphism of representations splits, decided by exact
/// solving of the section system.
pub fn splits_epi(rho: &RepMorphism) -> bool {
    let x = rho.target();
    let conditions: Vec<crate::repcat::HomCondition> = (0..x.quiver().vertices.len())
        .map(|v| crate::repcat::HomCondition::Post {
            vertex: v,
            post: rho.component_at_index(v).clone(),
            rhs: ModuleMap::identity(x.module_at_index(v)),
        })
        .collect();
    crate::repcat::solve_hom(x, rho.source(), &conditions).is_some()
}

/// Whether a monomorphism of representations splits, decided by exact
/// solving of the retraction system.
pub fn splits_mono(iota: &RepMorphism) -> bool {
    let x = iota.source();
    let conditions: Vec<crate::repcat::HomCondition> = (0..x.quiver().vertices.len())
        .map(|v| crate::repcat::HomCondition::Pre {
            vertex: v,
            pre: iota.component_at_index(v).clone(),
            rhs: ModuleMap::identity(x.module_at_index(v)),
        })
        .collect();
    crate::repcat::solve_hom(iota.target(), x, &conditions).is_some()
}

/// Whether a short exact sequence `0 → A → C → X → 0` splits.
pub fn sequence_splits(pi: &RepMorphism) -> bool {
    splits_epi(pi)
}
