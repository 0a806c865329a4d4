//! Representations of a quiver valued in finite `Z/N`-modules.
//!
//! Kernels, cokernels, and images are computed vertex-wise, with the arrow
//! maps induced by exact solving; a sequence of representations is exact
//! iff it is exact at every vertex. Hom groups are cut out of the biproduct
//! of the vertex-wise Hom groups by the commuting-square constraints.

use crate::exactlin::modn::ModMatrix;
use crate::quiver::{Arrow, ArrowId, Path, Quiver, VertexId};
use crate::zmod::{
    self, biproduct, cokernel, factor_through_epi, factor_through_mono, image, kernel, Biproduct,
    FiniteModule, HomCoords, ModuleMap, Ring,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

/// A representation: one finite module per vertex, one module map per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    quiver: Arc<Quiver>,
    ring: Ring,
    vertex_modules: Vec<FiniteModule>,
    arrow_maps: Vec<ModuleMap>,
}

impl Representation {
    pub fn new(
        quiver: Arc<Quiver>,
        ring: Ring,
        vertex_modules: Vec<FiniteModule>,
        arrow_maps: Vec<ModuleMap>,
    ) -> Self {
        assert_eq!(vertex_modules.len(), quiver.vertices.len(), "vertex module count");
        assert_eq!(arrow_maps.len(), quiver.arrows.len(), "arrow map count");
        for (a, map) in quiver.arrows.iter().zip(&arrow_maps) {
            let s = quiver.vertex_index(&a.source).unwrap();
            let t = quiver.vertex_index(&a.target).unwrap();
            assert_eq!(map.source(), &vertex_modules[s], "arrow {} source mismatch", a.id);
            assert_eq!(map.target(), &vertex_modules[t], "arrow {} target mismatch", a.id);
        }
        for m in &vertex_modules {
            assert_eq!(m.ring(), ring, "ring mismatch");
        }
        Representation { quiver, ring, vertex_modules, arrow_maps }
    }

    pub fn zero(quiver: Arc<Quiver>, ring: Ring) -> Self {
        let vertex_modules = vec![FiniteModule::zero(ring); quiver.vertices.len()];
        let arrow_maps = quiver
            .arrows
            .iter()
            .map(|_| ModuleMap::zero(&FiniteModule::zero(ring), &FiniteModule::zero(ring)))
            .collect();
        Representation { quiver, ring, vertex_modules, arrow_maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn modules(&self) -> &[FiniteModule] {
        &self.vertex_modules
    }

    pub fn module_at_index(&self, v: usize) -> &FiniteModule {
        &self.vertex_modules[v]
    }

    pub fn module_at(&self, v: &VertexId) -> &FiniteModule {
        &self.vertex_modules[self.quiver.vertex_index(v).expect("unknown vertex")]
    }

    pub fn map_at_index(&self, a: usize) -> &ModuleMap {
        &self.arrow_maps[a]
    }

    pub fn map_for(&self, a: &ArrowId) -> &ModuleMap {
        let idx =
            self.quiver.arrows.iter().position(|arrow| &arrow.id == a).expect("unknown arrow");
        &self.arrow_maps[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.vertex_modules.iter().all(|m| m.is_zero())
    }

    /// The composite map along a path; the trivial path acts as identity.
    pub fn path_action(&self, p: &Path) -> ModuleMap {
        let mut acc = ModuleMap::identity(self.module_at(&p.start));
        for a in &p.arrows {
            acc = acc.then(self.map_for(a));
        }
        acc
    }

    /// The canonical map `⊕_{a: j→i} X(j) → X(i)` whose `a`-th component is
    /// `X(a)`; an empty arrow set gives the map from the zero module.
    pub fn phi(&self, i: &VertexId) -> ModuleMap {
        self.phi_data(i).map
    }

    pub fn phi_data(&self, i: &VertexId) -> CanonicalFan {
        let arrows: Vec<Arrow> =
            self.quiver.arrows_into(i).expect("unknown vertex").into_iter().cloned().collect();
        let parts: Vec<FiniteModule> =
            arrows.iter().map(|a| self.module_at(&a.source).clone()).collect();
        let sum = biproduct(self.ring, &parts);
        let mut map = ModuleMap::zero(&sum.module, self.module_at(i));
        for (k, a) in arrows.iter().enumerate() {
            map = map.add(&sum.projections[k].then(self.map_for(&a.id)));
        }
        CanonicalFan { arrows: arrows.into_iter().map(|a| a.id).collect(), sum, map }
    }

    /// The canonical map `X(i) → ⊕_{a: i→j} X(j)` whose `a`-th component is
    /// `X(a)`; an empty arrow set gives the map to the zero module.
    pub fn psi(&self, i: &VertexId) -> ModuleMap {
        self.psi_data(i).map
    }

    pub fn psi_data(&self, i: &VertexId) -> CanonicalFan {
        let arrows: Vec<Arrow> =
            self.quiver.arrows_out(i).expect("unknown vertex").into_iter().cloned().collect();
        let parts: Vec<FiniteModule> =
            arrows.iter().map(|a| self.module_at(&a.target).clone()).collect();
        let sum = biproduct(self.ring, &parts);
        let mut map = ModuleMap::zero(self.module_at(i), &sum.module);
        for (k, a) in arrows.iter().enumerate() {
            map = map.add(&self.map_for(&a.id).then(&sum.injections[k]));
        }
        CanonicalFan { arrows: arrows.into_iter().map(|a| a.id).collect(), sum, map }
    }
}

/// A `phi`/`psi` fan: the biproduct over the relevant arrows (blocks keyed
/// by arrow id, in declaration order) together with the canonical map.
pub struct CanonicalFan {
    pub arrows: Vec<ArrowId>,
    pub sum: Biproduct,
    pub map: ModuleMap,
}

impl CanonicalFan {
    pub fn injection_for(&self, a: &ArrowId) -> &ModuleMap {
        let k = self.arrows.iter().position(|b| b == a).expect("arrow not in fan");
        &self.sum.injections[k]
    }

    pub fn projection_for(&self, a: &ArrowId) -> &ModuleMap {
        let k = self.arrows.iter().position(|b| b == a).expect("arrow not in fan");
        &self.sum.projections[k]
    }
}

/// A morphism of representations: a commuting family of vertex components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    source: Representation,
    target: Representation,
    components: Vec<ModuleMap>,
}

impl RepMorphism {
    /// Build and check the commuting squares; panics when they fail.
    pub fn new(source: Representation, target: Representation, components: Vec<ModuleMap>) -> Self {
        let m = Self::new_unchecked(source, target, components);
        assert!(m.validate(), "components do not commute with the arrow maps");
        m
    }

    /// Build without checking squares; used where validity is itself the
    /// question or guaranteed by construction.
    pub fn new_unchecked(
        source: Representation,
        target: Representation,
        components: Vec<ModuleMap>,
    ) -> Self {
        assert_eq!(source.quiver, target.quiver, "quiver mismatch");
        assert_eq!(components.len(), source.quiver.vertices.len(), "component count");
        for (v, c) in components.iter().enumerate() {
            assert_eq!(c.source(), &source.vertex_modules[v], "component source at {v}");
            assert_eq!(c.target(), &target.vertex_modules[v], "component target at {v}");
        }
        RepMorphism { source, target, components }
    }

    pub fn identity(x: &Representation) -> Self {
        let components = x.vertex_modules.iter().map(ModuleMap::identity).collect();
        RepMorphism { source: x.clone(), target: x.clone(), components }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        assert_eq!(source.quiver, target.quiver, "quiver mismatch");
        let components = source
            .vertex_modules
            .iter()
            .zip(&target.vertex_modules)
            .map(|(s, t)| ModuleMap::zero(s, t))
            .collect();
        RepMorphism { source: source.clone(), target: target.clone(), components }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn component_at_index(&self, v: usize) -> &ModuleMap {
        &self.components[v]
    }

    pub fn component(&self, v: &VertexId) -> &ModuleMap {
        &self.components[self.source.quiver.vertex_index(v).expect("unknown vertex")]
    }

    /// True iff every square `Y(a) ∘ λ(i) = λ(j) ∘ X(a)` commutes.
    pub fn validate(&self) -> bool {
        self.source.quiver.arrows.iter().enumerate().all(|(k, a)| {
            let s = self.source.quiver.vertex_index(&a.source).unwrap();
            let t = self.source.quiver.vertex_index(&a.target).unwrap();
            self.components[s].then(self.target.map_at_index(k))
                == self.source.map_at_index(k).then(&self.components[t])
        })
    }

    /// Diagrammatic composition: `self.then(g) = g ∘ self`.
    pub fn then(&self, g: &RepMorphism) -> RepMorphism {
        assert_eq!(self.target, g.source, "middle representation mismatch");
        let components =
            self.components.iter().zip(&g.components).map(|(a, b)| a.then(b)).collect();
        RepMorphism { source: self.source.clone(), target: g.target.clone(), components }
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        let components =
            self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect();
        RepMorphism { source: self.source.clone(), target: self.target.clone(), components }
    }

    pub fn is_zero_morphism(&self) -> bool {
        self.components.iter().all(|c| c.is_zero_map())
    }

    pub fn is_monic(&self) -> bool {
        self.components.iter().all(|c| c.is_monic())
    }

    pub fn is_epic(&self) -> bool {
        self.components.iter().all(|c| c.is_epic())
    }
}

/// Kernel, computed vertex-wise with induced arrow maps.
pub fn kernel_rep(lambda: &RepMorphism) -> (Representation, RepMorphism) {
    let x = lambda.source();
    let q = x.quiver.clone();
    let mut modules = Vec::new();
    let mut inclusions = Vec::new();
    for c in &lambda.components {
        let (k, incl) = kernel(c);
        modules.push(k);
        inclusions.push(incl);
    }
    let arrow_maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let s = q.vertex_index(&a.source).unwrap();
            let t = q.vertex_index(&a.target).unwrap();
            let through = inclusions[s].then(x.map_at_index(k));
            factor_through_mono(&through, &inclusions[t])
                .expect("InducedMapFailure: kernel arrow map does not factor")
        })
        .collect();
    let ker = Representation::new(q, x.ring, modules, arrow_maps);
    let incl = RepMorphism::new(ker.clone(), x.clone(), inclusions);
    (ker, incl)
}

/// Cokernel, computed vertex-wise with induced arrow maps.
pub fn cokernel_rep(lambda: &RepMorphism) -> (Representation, RepMorphism) {
    let y = lambda.target();
    let q = y.quiver.clone();
    let mut modules = Vec::new();
    let mut projections = Vec::new();
    for c in &lambda.components {
        let (cok, proj) = cokernel(c);
        modules.push(cok);
        projections.push(proj);
    }
    let arrow_maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let s = q.vertex_index(&a.source).unwrap();
            let t = q.vertex_index(&a.target).unwrap();
            let through = y.map_at_index(k).then(&projections[t]);
            factor_through_epi(&through, &projections[s])
                .expect("InducedMapFailure: cokernel arrow map does not factor")
        })
        .collect();
    let cok = Representation::new(q, y.ring, modules, arrow_maps);
    let proj = RepMorphism::new(y.clone(), cok.clone(), projections);
    (cok, proj)
}

/// Image, as a subrepresentation of the target.
pub fn image_rep(lambda: &RepMorphism) -> (Representation, RepMorphism) {
    let y = lambda.target();
    let q = y.quiver.clone();
    let mut modules = Vec::new();
    let mut inclusions = Vec::new();
    for c in &lambda.components {
        let (im, incl) = image(c);
        modules.push(im);
        inclusions.push(incl);
    }
    let arrow_maps = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let s = q.vertex_index(&a.source).unwrap();
            let t = q.vertex_index(&a.target).unwrap();
            let through = inclusions[s].then(y.map_at_index(k));
            factor_through_mono(&through, &inclusions[t])
                .expect("InducedMapFailure: image arrow map does not factor")
        })
        .collect();
    let im = Representation::new(q, y.ring, modules, arrow_maps);
    let incl = RepMorphism::new(im.clone(), y.clone(), inclusions);
    (im, incl)
}

/// `0 → A → C → X → 0` exactness, decided vertex-wise by order bookkeeping.
pub fn is_short_exact(incl: &RepMorphism, proj: &RepMorphism) -> bool {
    if incl.target() != proj.source() {
        return false;
    }
    if !incl.validate() || !proj.validate() {
        return false;
    }
    if !incl.then(proj).is_zero_morphism() {
        return false;
    }
    if !incl.is_monic() || !proj.is_epic() {
        return false;
    }
    (0..incl.source().vertex_modules.len()).all(|v| {
        incl.source().vertex_modules[v].order() * proj.target().vertex_modules[v].order()
            == incl.target().vertex_modules[v].order()
    })
}

/// The Hom group of two representations, with canonical generators and the
/// per-vertex coordinate bookkeeping needed to enumerate its elements.
pub struct HomRep {
    source: Representation,
    target: Representation,
    pub group: FiniteModule,
    vertex_coords: Vec<HomCoords>,
    offsets: Vec<usize>,
    ambient_moduli: Vec<u64>,
    gen_coords: Vec<Vec<u64>>,
}

impl HomRep {
    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    fn morphism_from_coords(&self, coords: &[u64]) -> RepMorphism {
        let components = self
            .vertex_coords
            .iter()
            .zip(&self.offsets)
            .map(|(hc, &off)| hc.map_from_coords(&coords[off..off + hc.len()]))
            .collect();
        RepMorphism::new_unchecked(self.source.clone(), self.target.clone(), components)
    }

    pub fn generators(&self) -> Vec<RepMorphism> {
        self.gen_coords.iter().map(|c| self.morphism_from_coords(c)).collect()
    }

    /// Ambient coordinate vectors of the canonical generators.
    pub fn generator_coords(&self) -> &[Vec<u64>] {
        &self.gen_coords
    }

    /// The element `Σ coeffs[s] · generator_s`.
    pub fn element(&self, coeffs: &[u64]) -> RepMorphism {
        assert_eq!(coeffs.len(), self.group.rank(), "coefficient count mismatch");
        let mut acc = vec![0u64; self.ambient_moduli.len()];
        for (c, gc) in coeffs.iter().zip(&self.gen_coords) {
            for (slot, (&g, &m)) in acc.iter_mut().zip(gc.iter().zip(&self.ambient_moduli)) {
                *slot = ((*slot as u128 + *c as u128 * g as u128) % m as u128) as u64;
            }
        }
        self.morphism_from_coords(&acc)
    }

    /// Every element of the Hom group, one per coefficient tuple.
    pub fn all_elements(&self) -> Vec<RepMorphism> {
        self.group.elements().iter().map(|c| self.element(c)).collect()
    }
}

/// Per-vertex Hom coordinates for morphisms `X → Y`, concatenated into one
/// ambient coordinate space.
pub struct HomAmbient {
    pub vertex_coords: Vec<HomCoords>,
    pub offsets: Vec<usize>,
    pub moduli: Vec<u64>,
}

impl HomAmbient {
    pub fn new(x: &Representation, y: &Representation) -> Self {
        let vertex_coords: Vec<HomCoords> = (0..x.quiver.vertices.len())
            .map(|v| HomCoords::new(&x.vertex_modules[v], &y.vertex_modules[v]))
            .collect();
        let mut offsets = Vec::with_capacity(vertex_coords.len());
        let mut total = 0;
        for hc in &vertex_coords {
            offsets.push(total);
            total += hc.len();
        }
        let moduli = vertex_coords.iter().flat_map(|hc| hc.moduli()).collect();
        HomAmbient { vertex_coords, offsets, moduli }
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }
}

type CommutingSystem = (Vec<HomCoords>, Vec<usize>, ModMatrix, Vec<u64>);

fn commuting_system(x: &Representation, y: &Representation) -> CommutingSystem {
    let q = &x.quiver;
    let n = x.ring.modulus();
    let ambient = HomAmbient::new(x, y);
    let vertex_coords = ambient.vertex_coords;
    let offsets = ambient.offsets;
    let total = ambient.moduli.len();

    let mut rows: Vec<(Vec<u64>, u64)> = Vec::new();
    for (k, a) in q.arrows.iter().enumerate() {
        let u = q.vertex_index(&a.source).unwrap();
        let w = q.vertex_index(&a.target).unwrap();
        let xa = x.map_at_index(k);
        let ya = y.map_at_index(k);
        let src_rank = x.vertex_modules[u].rank();
        let tgt_chain = y.vertex_modules[w].chain();
        // equation (j, i): Σ ya[j][ju]·λ(u)[ju][i] − Σ λ(w)[j][iw]·xa[iw][i] ≡ 0 (mod e_j)
        for (j, &ej) in tgt_chain.iter().enumerate() {
            for i in 0..src_rank {
                let mut row = vec![0u64; total];
                let hu = &vertex_coords[u];
                for (p, &(si, tj, _g, tfac)) in hu.pairs().iter().enumerate() {
                    if si != i {
                        continue;
                    }
                    let coeff = (ya.at(j, tj) as u128 * tfac as u128 % n as u128) as u64;
                    row[offsets[u] + p] = (row[offsets[u] + p] + coeff) % n;
                }
                let hw = &vertex_coords[w];
                for (p, &(si, tj, _g, tfac)) in hw.pairs().iter().enumerate() {
                    if tj != j {
                        continue;
                    }
                    let coeff = (tfac as u128 * xa.at(si, i) as u128 % n as u128) as u64;
                    if coeff != 0 {
                        row[offsets[w] + p] = (row[offsets[w] + p] + n - coeff) % n;
                    }
                }
                if row.iter().any(|&e| e != 0) {
                    rows.push((row, ej));
                }
            }
        }
    }
    let mut matrix = ModMatrix::zeros(rows.len(), total, n);
    let mut row_moduli = Vec::with_capacity(rows.len());
    for (r, (row, m)) in rows.iter().enumerate() {
        for (c, &e) in row.iter().enumerate() {
            matrix.set(r, c, e);
        }
        row_moduli.push(*m);
    }
    (vertex_coords, offsets, matrix, row_moduli)
}

/// The commuting-square constraint system on the ambient Hom coordinates.
pub fn commuting_constraints(
    x: &Representation,
    y: &Representation,
) -> (HomAmbient, ModMatrix, Vec<u64>) {
    let (vertex_coords, offsets, matrix, row_moduli) = commuting_system(x, y);
    let moduli = vertex_coords.iter().flat_map(|hc| hc.moduli()).collect();
    (HomAmbient { vertex_coords, offsets, moduli }, matrix, row_moduli)
}

/// `Hom(X, Y)` as a canonical finite module with generating morphisms.
pub fn hom_rep(x: &Representation, y: &Representation) -> HomRep {
    assert_eq!(x.quiver, y.quiver, "quiver mismatch");
    assert_eq!(x.ring, y.ring, "ring mismatch");
    let n = x.ring.modulus();
    let (vertex_coords, offsets, matrix, row_moduli) = commuting_system(x, y);
    let ambient: Vec<u64> = vertex_coords.iter().flat_map(|hc| hc.moduli()).collect();
    let gens = zmod::coords_kernel(&matrix, &row_moduli, &ambient);
    let (chain, gen_coords) = zmod::coords_subgroup(&ambient, &gens, n);
    HomRep {
        source: x.clone(),
        target: y.clone(),
        group: FiniteModule::from_chain(x.ring, chain),
        vertex_coords,
        offsets,
        ambient_moduli: ambient,
        gen_coords,
    }
}

/// An extra linear condition on a morphism `λ: X → Y`, at one vertex.
pub enum HomCondition {
    /// `post ∘ λ(v) = rhs`, with `post: Y(v) → T`, `rhs: X(v) → T`.
    Post { vertex: usize, post: ModuleMap, rhs: ModuleMap },
    /// `λ(v) ∘ pre = rhs`, with `pre: S → X(v)`, `rhs: S → Y(v)`.
    Pre { vertex: usize, pre: ModuleMap, rhs: ModuleMap },
}

/// Find a morphism `λ: X → Y` satisfying the commuting squares plus the
/// given linear conditions, or `None` if the system is unsolvable.
pub fn solve_hom(
    x: &Representation,
    y: &Representation,
    conditions: &[HomCondition],
) -> Option<RepMorphism> {
    let n = x.ring.modulus();
    let (vertex_coords, offsets, base, base_moduli) = commuting_system(x, y);
    let total = base.cols();

    let mut rows: Vec<(Vec<u64>, u64, u64)> = Vec::new(); // (coeffs, modulus, rhs)
    for r in 0..base.rows() {
        rows.push(((0..total).map(|c| base.at(r, c)).collect(), base_moduli[r], 0));
    }
    for cond in conditions {
        match cond {
            HomCondition::Post { vertex, post, rhs } => {
                let v = *vertex;
                let hc = &vertex_coords[v];
                // (post ∘ λ(v))[j][i] = Σ_tj post[j][tj]·λ(v)[tj][i]
                for j in 0..post.target().rank() {
                    let ej = post.target().chain()[j];
                    for i in 0..x.vertex_modules[v].rank() {
                        let mut row = vec![0u64; total];
                        for (p, &(si, tj, _g, tfac)) in hc.pairs().iter().enumerate() {
                            if si != i {
                                continue;
                            }
                            let coeff = (post.at(j, tj) as u128 * tfac as u128 % n as u128) as u64;
                            row[offsets[v] + p] = (row[offsets[v] + p] + coeff) % n;
                        }
                        rows.push((row, ej, rhs.at(j, i)));
                    }
                }
            }
            HomCondition::Pre { vertex, pre, rhs } => {
                let v = *vertex;
                let hc = &vertex_coords[v];
                // (λ(v) ∘ pre)[j][c] = Σ_si λ(v)[j][si]·pre[si][c]
                for j in 0..y.vertex_modules[v].rank() {
                    let ej = y.vertex_modules[v].chain()[j];
                    for c in 0..pre.source().rank() {
                        let mut row = vec![0u64; total];
                        for (p, &(si, tj, _g, tfac)) in hc.pairs().iter().enumerate() {
                            if tj != j {
                                continue;
                            }
                            let coeff = (tfac as u128 * pre.at(si, c) as u128 % n as u128) as u64;
                            row[offsets[v] + p] = (row[offsets[v] + p] + coeff) % n;
                        }
                        rows.push((row, ej, rhs.at(j, c)));
                    }
                }
            }
        }
    }

    let mut matrix = ModMatrix::zeros(rows.len(), total, n);
    let mut row_moduli = Vec::with_capacity(rows.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for (r, (row, m, b)) in rows.iter().enumerate() {
        for (c, &e) in row.iter().enumerate() {
            matrix.set(r, c, e);
        }
        row_moduli.push(*m);
        rhs.push(*b);
    }
    let solution = crate::exactlin::modn::solve(&matrix, &rhs, &row_moduli)?;
    let components = vertex_coords
        .iter()
        .zip(&offsets)
        .map(|(hc, &off)| {
            let moduli = hc.moduli();
            let coords: Vec<u64> =
                (0..hc.len()).map(|p| solution[off + p] % moduli[p]).collect();
            hc.map_from_coords(&coords)
        })
        .collect();
    let m = RepMorphism::new_unchecked(x.clone(), y.clone(), components);
    debug_assert!(m.validate());
    Some(m)
}

/// On-disk form of a representation: ring, quiver, vertex invariant chains,
/// and row-major arrow matrices.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RepresentationData {
    pub ring: u64,
    pub quiver: Quiver,
    pub vertex_modules: BTreeMap<String, Vec<u64>>,
    pub arrow_maps: BTreeMap<String, Vec<u64>>,
}

impl RepresentationData {
    pub fn from_rep(rep: &Representation) -> Self {
        let quiver = (*rep.quiver).clone();
        let vertex_modules = quiver
            .vertices
            .iter()
            .map(|v| (v.0.clone(), rep.module_at(v).chain().to_vec()))
            .collect();
        let arrow_maps = quiver
            .arrows
            .iter()
            .map(|a| (a.id.0.clone(), rep.map_for(&a.id).entries().to_vec()))
            .collect();
        RepresentationData { ring: rep.ring.modulus(), quiver, vertex_modules, arrow_maps }
    }

    pub fn into_rep(self) -> Result<Representation, String> {
        self.quiver.validate().map_err(|e| e.to_string())?;
        let ring = Ring::new(self.ring);
        let quiver = Arc::new(self.quiver);
        let mut vertex_modules = Vec::new();
        for v in &quiver.vertices {
            let chain = self
                .vertex_modules
                .get(&v.0)
                .ok_or_else(|| format!("missing module for vertex {v}"))?;
            vertex_modules.push(FiniteModule::from_chain(ring, chain.clone()));
        }
        let mut arrow_maps = Vec::new();
        for a in &quiver.arrows {
            let entries = self
                .arrow_maps
                .get(&a.id.0)
                .ok_or_else(|| format!("missing matrix for arrow {}", a.id))?;
            let s = quiver.vertex_index(&a.source).unwrap();
            let t = quiver.vertex_index(&a.target).unwrap();
            arrow_maps.push(ModuleMap::new(
                vertex_modules[s].clone(),
                vertex_modules[t].clone(),
                entries.clone(),
            ));
        }
        Ok(Representation::new(quiver, ring, vertex_modules, arrow_maps))
    }
}
