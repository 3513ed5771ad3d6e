//! Finite permutation groups by explicit enumeration.
//!
//! Elements are kept in lexicographic order of their image tuples, so the identity is
//! always index 0 and every "least element" choice below is reproducible.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Default cap on enumerated group order.
pub const ORDER_CAP: usize = 10_000;

const TABLE_CAP: usize = 2048;

/// Permutation of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::Precondition(format!("{images:?} is not a permutation")));
            }
            seen[i as usize] = true;
        }
        Ok(Perm(images))
    }

    /// Parses disjoint-cycle notation over 0-based points, e.g. `(0 1 2)(3 4)`.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self> {
        parse_cycles_at(n, s, 1)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `(self ∘ o)(i) = self(o(i))`.
    pub fn compose(&self, o: &Perm) -> Perm {
        Perm(o.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut v = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            v[j as usize] = i as u32;
        }
        Perm(v)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.apply(s);
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_cycles_at(n: usize, s: &str, line: usize) -> Result<Perm> {
    let err = |col: usize, msg: String| Error::Parse { line, col, msg };
    let mut img: Vec<u32> = (0..n as u32).collect();
    let mut moved = vec![false; n];
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c != '(' {
            return Err(err(i + 1, format!("expected '(' but found '{c}'")));
        }
        i += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            while i < chars.len() && (chars[i].is_whitespace() || chars[i] == ',') {
                i += 1;
            }
            if i >= chars.len() {
                return Err(err(i + 1, "unterminated cycle".into()));
            }
            if chars[i] == ')' {
                i += 1;
                break;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i + 1, format!("unexpected '{}'", chars[i])));
            }
            let tok: String = chars[start..i].iter().collect();
            let v: usize = tok.parse().map_err(|_| err(start + 1, format!("bad point '{tok}'")))?;
            if v >= n {
                return Err(err(start + 1, format!("point {v} out of range for degree {n}")));
            }
            if moved[v] || cycle.contains(&v) {
                return Err(err(start + 1, format!("point {v} repeated")));
            }
            cycle.push(v);
        }
        for k in 0..cycle.len() {
            img[cycle[k]] = cycle[(k + 1) % cycle.len()] as u32;
            moved[cycle[k]] = true;
        }
    }
    Ok(Perm(img))
}

/// A finite permutation group with all elements enumerated.
pub struct Group {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    gen_idx: Vec<usize>,
    // element i = gens[word[i].0] ∘ elements[word[i].1]; identity has none
    word: Vec<Option<(usize, usize)>>,
    bfs: Vec<usize>,
    inv: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl PartialEq for Group {
    fn eq(&self, o: &Group) -> bool {
        self.degree == o.degree && self.gens == o.gens
    }
}
impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group(order {}, gens {:?})", self.order(), self.gens)
    }
}

impl Group {
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<Arc<Group>> {
        Self::with_cap(degree, gens, ORDER_CAP)
    }

    pub fn with_cap(degree: usize, gens: Vec<Perm>, cap: usize) -> Result<Arc<Group>> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Dimension(format!("generator {g} has degree {} not {degree}", g.degree())));
            }
        }
        let id = Perm::identity(degree);
        let mut parent: HashMap<Perm, Option<(usize, Perm)>> = HashMap::new();
        let mut order_found = vec![id.clone()];
        parent.insert(id.clone(), None);
        let mut q = VecDeque::from([id]);
        while let Some(x) = q.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let y = g.compose(&x);
                if !parent.contains_key(&y) {
                    if parent.len() >= cap {
                        return Err(Error::Size(format!("group order exceeds cap {cap}")));
                    }
                    parent.insert(y.clone(), Some((gi, x.clone())));
                    order_found.push(y.clone());
                    q.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = parent.keys().cloned().collect();
        elements.sort();
        let index: HashMap<Perm, usize> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let word = elements
            .iter()
            .map(|e| parent[e].as_ref().map(|(g, x)| (*g, index[x])))
            .collect();
        let bfs = order_found.iter().map(|e| index[e]).collect();
        let inv = elements.iter().map(|e| index[&e.inverse()]).collect();
        let gen_idx = gens.iter().map(|g| index[g]).collect();
        let n = elements.len();
        let table = (n <= TABLE_CAP).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        Ok(Arc::new(Group { degree, gens, elements, index, gen_idx, word, bfs, inv, table }))
    }

    pub fn trivial(degree: usize) -> Arc<Group> {
        Self::from_generators(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }
    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_idx
    }
    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }
    /// `(generator, parent)` with `element = generator · parent`, or `None` for the identity.
    pub fn word_step(&self, i: usize) -> Option<(usize, usize)> {
        self.word[i]
    }
    /// Element indices in breadth-first order from the identity; parents precede children.
    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn whole(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted(self.clone(), (0..self.order()).collect())
    }

    pub fn trivial_subgroup(self: &Arc<Self>) -> Subgroup {
        Subgroup::from_sorted(self.clone(), vec![0])
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup(self: &Arc<Self>, gens: &[usize]) -> Subgroup {
        Subgroup::from_sorted(self.clone(), self.closure(&[0], gens))
    }

    /// Subgroup generated by permutations, which must lie in this group.
    pub fn subgroup_from_perms(self: &Arc<Self>, gens: &[Perm]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| self.index_of(g).ok_or_else(|| Error::Containment(format!("{g} is not in the group"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&idx))
    }

    /// Sorted closure of `start` under right multiplication by `gens`.
    fn closure(&self, start: &[usize], gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        let mut q = VecDeque::new();
        for &s in start {
            if !seen[s] {
                seen[s] = true;
                out.push(s);
                q.push_back(s);
            }
        }
        while let Some(x) = q.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    q.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut c: Vec<usize> = (0..n).map(|g| self.conj(g, x)).collect();
            c.sort_unstable();
            c.dedup();
            for &y in &c {
                seen[y] = true;
            }
            out.push(c);
        }
        out
    }

    /// Every subgroup, sorted by (order, elements).
    pub fn all_subgroups(self: &Arc<Self>) -> Vec<Subgroup> {
        let mut found: HashMap<Vec<usize>, ()> = HashMap::new();
        let mut list: Vec<Vec<usize>> = Vec::new();
        let mut q = VecDeque::new();
        let triv = vec![0usize];
        found.insert(triv.clone(), ());
        list.push(triv.clone());
        q.push_back(triv);
        while let Some(s) = q.pop_front() {
            let mut inside = vec![false; self.order()];
            for &x in &s {
                inside[x] = true;
            }
            for x in 0..self.order() {
                if inside[x] {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(x);
                let t = self.closure(&[0], &gens);
                if !found.contains_key(&t) {
                    found.insert(t.clone(), ());
                    list.push(t.clone());
                    q.push_back(t);
                }
            }
        }
        list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        list.into_iter().map(|e| Subgroup::from_sorted(self.clone(), e)).collect()
    }

    /// One representative per conjugacy class of subgroups, sorted by (order, elements).
    pub fn subgroup_classes(self: &Arc<Self>) -> Vec<Subgroup> {
        fuse_classes(&self.whole(), self.all_subgroups())
    }
}

/// Keeps the first member of each conjugacy class under `g`.
fn fuse_classes(g: &Subgroup, subs: Vec<Subgroup>) -> Vec<Subgroup> {
    let mut reps: Vec<Subgroup> = Vec::new();
    for s in subs {
        if !reps.iter().any(|r| r.order() == s.order() && g.are_conjugate(r, &s)) {
            reps.push(s);
        }
    }
    reps
}

/// A subgroup of an enumerated group, stored as sorted element indices of the parent.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<Group>,
    elems: Vec<usize>,
    gens: Vec<usize>,
    group: OnceLock<Arc<Group>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, o: &Subgroup) -> bool {
        *self.parent == *o.parent && self.elems == o.elems
    }
}
impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|&i| self.parent.element(i).to_string()).collect();
        write!(f, "Subgroup(order {}, <{}>)", self.order(), g.join(", "))
    }
}

impl Subgroup {
    fn from_sorted(parent: Arc<Group>, elems: Vec<usize>) -> Self {
        // greedy generating set: least element not yet generated
        let mut gens = Vec::new();
        let mut have = vec![0usize];
        let mut inside = vec![false; parent.order()];
        inside[0] = true;
        for &x in &elems {
            if inside[x] {
                continue;
            }
            gens.push(x);
            have = parent.closure(&[0], &gens);
            for &y in &have {
                inside[y] = true;
            }
        }
        debug_assert_eq!(have.len(), elems.len());
        Subgroup { parent, elems, gens, group: OnceLock::new() }
    }

    /// Builds a handle from an element set; fails unless it is closed.
    pub fn from_elements(parent: &Arc<Group>, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        let s = parent.subgroup(&elems);
        if s.elems != elems {
            return Err(Error::Containment("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }
    pub fn order(&self) -> usize {
        self.elems.len()
    }
    pub fn elements(&self) -> &[usize] {
        &self.elems
    }
    /// Parent indices of the canonical generators.
    pub fn generators(&self) -> &[usize] {
        &self.gens
    }
    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }
    pub fn is_whole(&self) -> bool {
        self.elems.len() == self.parent.order()
    }
    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }
    pub fn index_in_parent(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// This subgroup as a group in its own right. Its element `i` is parent element `elements()[i]`.
    pub fn as_group(&self) -> &Arc<Group> {
        self.group.get_or_init(|| {
            if self.is_whole() {
                return self.parent.clone();
            }
            let perms = self.gens.iter().map(|&g| self.parent.element(g).clone()).collect();
            Group::from_generators(self.parent.degree(), perms).expect("subgroup of an enumerated group")
        })
    }

    /// Index in `as_group()` of a parent element.
    pub fn local_index(&self, x: usize) -> Option<usize> {
        self.elems.binary_search(&x).ok()
    }

    pub fn is_subgroup_of(&self, o: &Subgroup) -> bool {
        *self.parent == *o.parent && self.elems.iter().all(|&x| o.contains(x))
    }

    fn check_same(&self, o: &Subgroup) -> Result<()> {
        if *self.parent != *o.parent {
            return Err(Error::Compatibility("subgroups of different groups".into()));
        }
        Ok(())
    }

    fn require_sub(&self, o: &Subgroup) -> Result<()> {
        self.check_same(o)?;
        if !o.is_subgroup_of(self) {
            return Err(Error::Containment(format!("{o:?} is not contained in {self:?}")));
        }
        Ok(())
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let mut e: Vec<usize> = self.elems.iter().map(|&x| self.parent.conj(g, x)).collect();
        e.sort_unstable();
        Subgroup::from_sorted(self.parent.clone(), e)
    }

    pub fn intersect(&self, o: &Subgroup) -> Result<Subgroup> {
        self.check_same(o)?;
        let e = self.elems.iter().copied().filter(|&x| o.contains(x)).collect();
        Ok(Subgroup::from_sorted(self.parent.clone(), e))
    }

    /// `N_self(q)`.
    pub fn normalizer(&self, q: &Subgroup) -> Result<Subgroup> {
        self.check_same(q)?;
        let e = self
            .elems
            .iter()
            .copied()
            .filter(|&g| q.elems.iter().all(|&x| q.contains(self.parent.conj(g, x))))
            .collect();
        Ok(Subgroup::from_sorted(self.parent.clone(), e))
    }

    /// Whether `a` and `b` are conjugate by an element of this subgroup.
    pub fn are_conjugate(&self, a: &Subgroup, b: &Subgroup) -> bool {
        self.conjugator(a, b).is_some()
    }

    /// Least `g` in this subgroup with `g a g^-1 = b`.
    pub fn conjugator(&self, a: &Subgroup, b: &Subgroup) -> Option<usize> {
        if a.order() != b.order() {
            return None;
        }
        self.elems
            .iter()
            .copied()
            .find(|&g| a.elems.iter().all(|&x| b.contains(self.parent.conj(g, x))))
    }

    /// Least `g` in this subgroup with `g q g^-1 ⊆ p`.
    pub fn subconjugator(&self, q: &Subgroup, p: &Subgroup) -> Option<usize> {
        if p.order() % q.order() != 0 {
            return None;
        }
        self.elems
            .iter()
            .copied()
            .find(|&g| q.elems.iter().all(|&x| p.contains(self.parent.conj(g, x))))
    }

    /// Left coset representatives of `h` in this subgroup (least element of each coset, ascending).
    pub fn left_coset_reps(&self, h: &Subgroup) -> Result<Vec<usize>> {
        Ok(self.left_cosets(h)?.reps)
    }

    pub fn left_cosets(&self, h: &Subgroup) -> Result<Cosets> {
        self.require_sub(h)?;
        let n = self.parent.order();
        let mut lookup = vec![None; n];
        let mut reps = Vec::new();
        for &x in &self.elems {
            if lookup[x].is_some() {
                continue;
            }
            let i = reps.len();
            reps.push(x);
            for (hi, &y) in h.elems.iter().enumerate() {
                lookup[self.parent.mul(x, y)] = Some((i, hi));
            }
        }
        Ok(Cosets { reps, lookup })
    }

    /// `K \ self / H` double coset representatives (least element of each, ascending).
    pub fn double_coset_reps(&self, k: &Subgroup, h: &Subgroup) -> Result<Vec<usize>> {
        self.require_sub(k)?;
        self.require_sub(h)?;
        let n = self.parent.order();
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        for &x in &self.elems {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &a in &k.elems {
                let ax = self.parent.mul(a, x);
                for &b in &h.elems {
                    seen[self.parent.mul(ax, b)] = true;
                }
            }
        }
        Ok(reps)
    }

    pub fn is_normal_in(&self, g: &Subgroup) -> bool {
        g.elems.iter().all(|&x| self.elems.iter().all(|&y| self.contains(self.parent.conj(x, y))))
    }

    /// A Sylow `p`-subgroup, grown one normalizing `p`-element at a time.
    pub fn sylow(&self, p: u32) -> Subgroup {
        let p = p as usize;
        let mut full = 1;
        let mut n = self.order();
        while n % p == 0 {
            full *= p;
            n /= p;
        }
        let mut s = Subgroup::from_sorted(self.parent.clone(), vec![0]);
        while s.order() < full {
            let norm = self.normalizer(&s).expect("same parent");
            let x = norm
                .elems
                .iter()
                .copied()
                .find(|&x| {
                    !s.contains(x) && {
                        let mut y = x;
                        let mut k = 1;
                        while !s.contains(y) {
                            y = self.parent.mul(y, x);
                            k += 1;
                        }
                        k == p
                    }
                })
                .expect("Sylow growth step");
            let mut g = s.gens.clone();
            g.push(x);
            s = self.parent.subgroup(&g);
        }
        s
    }

    /// Representatives of the conjugacy classes (under this subgroup) of its `p`-subgroups,
    /// sorted by (order, elements); the trivial subgroup comes first.
    pub fn p_subgroup_classes(&self, p: u32) -> SubgroupCollection {
        let s = self.sylow(p);
        let mut subs: Vec<Vec<usize>> = vec![vec![0]];
        let mut q = VecDeque::from([vec![0usize]]);
        while let Some(u) = q.pop_front() {
            for &x in &s.elems {
                if u.binary_search(&x).is_ok() {
                    continue;
                }
                let mut g = u.clone();
                g.push(x);
                let t = self.parent.closure(&[0], &g);
                if !subs.contains(&t) {
                    subs.push(t.clone());
                    q.push_back(t);
                }
            }
        }
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let subs = subs.into_iter().map(|e| Subgroup::from_sorted(self.parent.clone(), e)).collect();
        SubgroupCollection::new(fuse_classes(self, subs), true)
    }

    /// Whether some conjugate (by this subgroup) of `q` lies in a member of `coll`.
    pub fn is_subconjugate(&self, q: &Subgroup, coll: &SubgroupCollection) -> bool {
        coll.members().iter().any(|p| self.subconjugator(q, p).is_some())
    }

    /// Re-expresses a subgroup of this one as a subgroup of `as_group()`.
    pub fn localize(&self, d: &Subgroup) -> Result<Subgroup> {
        self.require_sub(d)?;
        let g = self.as_group().clone();
        let e = d.elems.iter().map(|&x| self.local_index(x).expect("contained")).collect::<Vec<_>>();
        let mut e = e;
        e.sort_unstable();
        Ok(Subgroup::from_sorted(g, e))
    }

    /// Inverse of `localize`: a subgroup of `as_group()` as a subgroup of the parent.
    pub fn globalize(&self, d: &Subgroup) -> Result<Subgroup> {
        if *d.parent != **self.as_group() {
            return Err(Error::Compatibility("not a subgroup of this subgroup's group".into()));
        }
        let mut e: Vec<usize> = d.elems.iter().map(|&x| self.elems[x]).collect();
        e.sort_unstable();
        Ok(Subgroup::from_sorted(self.parent.clone(), e))
    }

    /// Short label from the isomorphism type for the groups used here.
    pub fn label(&self) -> String {
        let n = self.order();
        let g = self.as_group();
        let exp_max = (0..n).map(|i| g.element_order(i)).max().unwrap_or(1);
        let abelian = (0..n).all(|a| g.generator_indices().iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        match n {
            1 => "1".into(),
            _ if exp_max == n => format!("C{n}"),
            4 => "V4".into(),
            6 => "S3".into(),
            8 if !abelian && exp_max == 4 && (0..n).filter(|&i| g.element_order(i) == 2).count() == 5 => "D8".into(),
            8 if !abelian => "Q8".into(),
            12 if !abelian && exp_max == 3 => "A4".into(),
            24 if !abelian && exp_max == 4 => "S4".into(),
            60 if !abelian && exp_max == 5 => "A5".into(),
            _ => format!("order{n}"),
        }
    }
}

/// Left cosets `x H` with a lookup from parent element to `(coset, element of H)`.
#[derive(Clone, Debug)]
pub struct Cosets {
    pub reps: Vec<usize>,
    lookup: Vec<Option<(usize, usize)>>,
}

impl Cosets {
    /// For `y = reps[i] * h`, returns `(i, position of h in H)`.
    pub fn locate(&self, y: usize) -> (usize, usize) {
        self.lookup[y].expect("element outside the coset space")
    }
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// A list of subgroups, optionally read up to conjugacy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCollection {
    members: Vec<Subgroup>,
    up_to_conjugacy: bool,
}

impl SubgroupCollection {
    pub fn new(members: Vec<Subgroup>, up_to_conjugacy: bool) -> Self {
        SubgroupCollection { members, up_to_conjugacy }
    }
    pub fn empty() -> Self {
        Self::new(Vec::new(), true)
    }
    pub fn members(&self) -> &[Subgroup] {
        &self.members
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn up_to_conjugacy(&self) -> bool {
        self.up_to_conjugacy
    }
    pub fn push(&mut self, s: Subgroup) {
        self.members.push(s);
    }
}

/// Parses the text group format: `degree n`, optional `p <prime>`, then one generator per line.
pub fn parse_group(text: &str) -> Result<(Arc<Group>, Option<u32>)> {
    let mut degree = None;
    let mut p = None;
    let mut gens = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let lno = ln + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree") {
            let v = rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                line: lno,
                col: 8,
                msg: format!("bad degree '{}'", rest.trim()),
            })?;
            degree = Some(v);
        } else if let Some(rest) = line.strip_prefix('p').filter(|r| r.starts_with(char::is_whitespace)) {
            let v = rest.trim().parse::<u32>().map_err(|_| Error::Parse {
                line: lno,
                col: 3,
                msg: format!("bad prime '{}'", rest.trim()),
            })?;
            if !crate::gfla::is_prime(v) || v >= crate::gfla::MAX_P {
                return Err(Error::Parse { line: lno, col: 3, msg: format!("{v} is not a supported prime") });
            }
            p = Some(v);
        } else {
            let n = degree.ok_or(Error::Parse { line: lno, col: 1, msg: "generator before degree line".into() })?;
            let off = raw.len() - raw.trim_start().len();
            gens.push(parse_cycles_at(n, line, lno).map_err(|e| match e {
                Error::Parse { line, col, msg } => Error::Parse { line, col: col + off, msg },
                e => e,
            })?);
        }
    }
    let n = degree.ok_or(Error::Parse { line: 1, col: 1, msg: "missing degree line".into() })?;
    Ok((Group::from_generators(n, gens)?, p))
}

/// Renders a group in the text format.
pub fn format_group(g: &Group, p: Option<u32>) -> String {
    let mut s = format!("degree {}\n", g.degree());
    if let Some(p) = p {
        s += &format!("p {p}\n");
    }
    for x in g.generators() {
        s += &format!("{x}\n");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> Arc<Group> {
        Group::from_generators(n, gens.iter().map(|s| Perm::parse_cycles(n, s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn enumeration_orders() {
        assert_eq!(Group::trivial(3).order(), 1);
        assert_eq!(grp(2, &["(0 1)"]).order(), 2);
        let a5 = grp(5, &["(0 1 2 3 4)", "(0 1 2)"]);
        assert_eq!(a5.order(), 60);
        assert!(a5.element(0).is_identity());
        assert!(Group::with_cap(5, a5.generators().to_vec(), 59).is_err());
    }

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles(5, " (0 1 2)( 3 4 ) ").unwrap();
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
        assert!(Perm::parse_cycles(3, "()").unwrap().is_identity());
        assert!(matches!(Perm::parse_cycles(3, "(0 3)"), Err(Error::Parse { col: 4, .. })));
        let (g, p) = parse_group("degree 3\np 2\n(0 1)\n(0 1 2)\n").unwrap();
        assert_eq!((g.order(), p), (6, Some(2)));
        assert!(matches!(parse_group("degree 3\n(0 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn cosets_and_double_cosets() {
        let s3 = grp(3, &["(0 1)", "(0 1 2)"]);
        let g = s3.whole();
        let h = s3.subgroup(&[s3.index_of(&Perm::parse_cycles(3, "(0 1)").unwrap()).unwrap()]);
        assert_eq!(g.left_coset_reps(&g).unwrap(), vec![0]);
        assert_eq!(g.left_coset_reps(&s3.trivial_subgroup()).unwrap().len(), 6);
        assert_eq!(g.left_coset_reps(&h).unwrap().len(), 3);
        let d = g.double_coset_reps(&h, &h).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], 0);
        assert!(h.left_coset_reps(&g).is_err());
    }

    #[test]
    fn a5_two_local_structure() {
        let a5 = grp(5, &["(0 1 2 3 4)", "(0 1 2)"]);
        let g = a5.whole();
        let s = g.sylow(2);
        assert_eq!(s.order(), 4);
        assert_eq!(s.label(), "V4");
        assert_eq!(g.normalizer(&s).unwrap().order(), 12);
        let cls = g.p_subgroup_classes(2);
        let orders: Vec<usize> = cls.members().iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        assert_eq!(g.sylow(3).order(), 3);
        assert_eq!(g.sylow(7).order(), 1);
        assert_eq!(a5.conjugacy_classes().len(), 5);
        assert_eq!(a5.subgroup_classes().len(), 9);
    }

    #[test]
    fn subgroup_as_group_indices_agree() {
        let s4 = grp(4, &["(0 1 2 3)", "(0 1)"]);
        let d8 = s4.whole().sylow(2);
        assert_eq!(d8.label(), "D8");
        let h = d8.as_group();
        for (i, &x) in d8.elements().iter().enumerate() {
            assert_eq!(h.element(i), s4.element(x));
        }
        let c = d8.p_subgroup_classes(2);
        let back = d8.globalize(&d8.localize(&c.members()[1]).unwrap()).unwrap();
        assert_eq!(back, c.members()[1]);
    }
}
