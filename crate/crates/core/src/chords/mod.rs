//! Chord diagrams stored as double-occurrence circular words, and their
//! interlacement (circle) graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graphs::{Graph, Vertex};

mod builders;

pub use builders::{build_gap1, build_gap2, gap2_core, realize_wedge, PermutationLayout};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChordError {
    #[error("token `{token}` occurs {count} times, expected 2")]
    Malformed { token: String, count: usize },
    #[error("unknown chord `{0}`")]
    MissingChord(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("negative sphere dimension {0}")]
    NegativeDimension(i64),
    #[error("empty dimension list")]
    EmptyDims,
}

/// A chord diagram. `word[i]` is the chord whose endpoint sits at circle
/// position `i`; chords are numbered by first occurrence and `labels[c]`
/// names chord `c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ChordDiagram {
    word: Vec<usize>,
    labels: Vec<String>,
}

/// Name of the `i`-th generated chord: `a`..`z`, `aa`, `ab`, ...
pub fn label_name(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}

impl ChordDiagram {
    pub fn empty() -> Self {
        ChordDiagram::default()
    }

    /// Builds a diagram from a token sequence in which every token occurs
    /// exactly twice.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, ChordError> {
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        let mut labels = Vec::new();
        let mut counts = Vec::new();
        let mut word = Vec::with_capacity(tokens.len());
        for t in tokens {
            let t = t.as_ref();
            let c = *index.entry(t).or_insert_with(|| {
                labels.push(t.to_string());
                counts.push(0usize);
                labels.len() - 1
            });
            counts[c] += 1;
            word.push(c);
        }
        if let Some(c) = counts.iter().position(|&n| n != 2) {
            return Err(ChordError::Malformed { token: labels[c].clone(), count: counts[c] });
        }
        Ok(ChordDiagram { word, labels })
    }

    /// Parses whitespace-separated tokens; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ChordError> {
        let tokens: Vec<&str> = text
            .lines()
            .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
            .collect();
        Self::from_tokens(&tokens)
    }

    /// Diagram from chord indices with generated labels. Chords are
    /// renumbered by first occurrence.
    pub fn from_indices(word: &[usize]) -> Result<Self, ChordError> {
        let tokens: Vec<String> = word.iter().map(|&c| label_name(c)).collect();
        Self::from_tokens(&tokens)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn tokens(&self) -> Vec<&str> {
        self.word.iter().map(|&c| self.labels[c].as_str()).collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn chord_count(&self) -> usize {
        self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn chord(&self, label: &str) -> Result<usize, ChordError> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| ChordError::MissingChord(label.to_string()))
    }

    /// The two endpoint positions of chord `c`, in increasing order.
    pub fn endpoints(&self, c: usize) -> (usize, usize) {
        let mut it = self.word.iter().enumerate().filter(|(_, &x)| x == c).map(|(i, _)| i);
        let a = it.next().expect("chord has two endpoints");
        let b = it.next().expect("chord has two endpoints");
        (a, b)
    }

    fn all_endpoints(&self) -> Vec<(usize, usize)> {
        let mut ends = vec![(usize::MAX, usize::MAX); self.chord_count()];
        for (i, &c) in self.word.iter().enumerate() {
            if ends[c].0 == usize::MAX {
                ends[c].0 = i;
            } else {
                ends[c].1 = i;
            }
        }
        ends
    }

    /// Whether the endpoints of chords `a` and `b` alternate.
    pub fn interlace(&self, a: usize, b: usize) -> bool {
        let (a0, a1) = self.endpoints(a);
        let (b0, b1) = self.endpoints(b);
        a != b && ((a0 < b0 && b0 < a1) != (a0 < b1 && b1 < a1))
    }

    /// The circle graph: vertex `c` for chord `c`, labelled by the chord
    /// label, and an edge for every interlacing pair.
    pub fn intersection_graph(&self) -> Graph {
        let mut g = Graph::new();
        for l in &self.labels {
            g.add_labeled_vertex(l.clone());
        }
        let ends = self.all_endpoints();
        for a in 0..ends.len() {
            for b in a + 1..ends.len() {
                let (a0, a1) = ends[a];
                let (b0, b1) = ends[b];
                if (a0 < b0 && b0 < a1) != (a0 < b1 && b1 < a1) {
                    g.add_edge(Vertex(a as u32), Vertex(b as u32)).expect("distinct chords");
                }
            }
        }
        g
    }

    /// Cut positions `(i, j)` splitting the circle into the arcs
    /// `word[i..j]` and the rest, with every chord having one endpoint in
    /// each arc; `None` if no such split exists.
    pub fn is_permutation(&self) -> Option<(usize, usize)> {
        let len = self.word.len();
        if len == 0 {
            return Some((0, 0));
        }
        let n = len / 2;
        // Both arcs must hold exactly n endpoints.
        (0..n).find_map(|i| {
            let mut seen = vec![false; n];
            let ok = (i..i + n).all(|p| !std::mem::replace(&mut seen[self.word[p]], true));
            ok.then_some((i, i + n))
        })
    }

    /// Whether the chords split into two classes of pairwise
    /// non-interlacing chords, one of which has no nested pair. A class is
    /// nest-free when every chord in it has a side free of endpoints of the
    /// other chords in the class.
    pub fn is_non_nested(&self) -> bool {
        let g = self.intersection_graph();
        let Some(colour) = g.two_coloring() else {
            return false;
        };
        let comps = g.components();
        let ends = self.all_endpoints();
        // Flipping every component at once swaps the classes, and both
        // classes are tested, so the first component stays fixed.
        let free = comps.len().saturating_sub(1);
        (0u64..1 << free).any(|mask| {
            let mut class = vec![false; self.chord_count()];
            for (i, comp) in comps.iter().enumerate() {
                let flip = i > 0 && mask >> (i - 1) & 1 == 1;
                for v in comp {
                    class[v.0 as usize] = colour[v] ^ flip;
                }
            }
            nest_free(&ends, &class, true) || nest_free(&ends, &class, false)
        })
    }

    /// Lexicographically least relabelled word over all rotations and
    /// reflections, with generated labels.
    pub fn canonical(&self) -> ChordDiagram {
        let len = self.word.len();
        let mut best: Option<Vec<usize>> = None;
        for rev in [false, true] {
            for r in 0..len.max(1) {
                let seq: Vec<usize> = (0..len)
                    .map(|i| if rev { self.word[(r + len - i) % len] } else { self.word[(r + i) % len] })
                    .collect();
                let relabelled = relabel(&seq);
                if best.as_ref().map_or(true, |b| relabelled < *b) {
                    best = Some(relabelled);
                }
            }
        }
        ChordDiagram::from_indices(&best.unwrap_or_default()).expect("relabelling keeps multiplicities")
    }

    /// The word rotated to start at position `r`.
    pub fn rotated(&self, r: usize) -> ChordDiagram {
        let len = self.word.len();
        if len == 0 {
            return self.clone();
        }
        let tokens: Vec<&str> = (0..len).map(|i| self.labels[self.word[(r + i) % len]].as_str()).collect();
        ChordDiagram::from_tokens(&tokens).expect("rotation keeps multiplicities")
    }

    /// A label not used by this diagram, derived from `base`.
    pub(crate) fn fresh_label(&self, base: &str, taken: &BTreeSet<String>) -> String {
        let used = |s: &str| taken.contains(s) || self.labels.iter().any(|l| l == s);
        let mut s = base.to_string();
        let mut i = 1;
        while used(&s) {
            s = format!("{base}{i}");
            i += 1;
        }
        s
    }

    /// Vertex wedge of the circle graphs: chord `c1` of `self` and chord
    /// `c2` of `other` become one chord labelled `c1`. Clashing labels of
    /// `other` are renamed.
    pub fn wedge(&self, c1: &str, other: &ChordDiagram, c2: &str) -> Result<ChordDiagram, ChordError> {
        let a = self.chord(c1)?;
        let b = other.chord(c2)?;
        // self as c1 U c1 V, other as c2 X c2 Y; result w U Y w X V.
        let (a0, a1) = self.endpoints(a);
        let d1 = self.rotated(a0);
        let split1 = a1 - a0;
        let t1 = d1.tokens();
        let (u, v) = (&t1[1..split1], &t1[split1 + 1..]);
        let (b0, b1) = other.endpoints(b);
        let split2 = b1 - b0;
        let d2 = other.rotated(b0);
        let mut taken: BTreeSet<String> = self.labels.iter().cloned().collect();
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        for l in d2.labels() {
            if l == c2 {
                continue;
            }
            let new = if taken.contains(l) { d2.fresh_label(l, &taken) } else { l.clone() };
            taken.insert(new.clone());
            rename.insert(l.clone(), new);
        }
        let t2: Vec<String> = d2.tokens().iter().map(|t| rename.get(*t).cloned().unwrap_or_default()).collect();
        let (x, y) = (&t2[1..split2], &t2[split2 + 1..]);
        let mut out: Vec<String> = vec![c1.to_string()];
        out.extend(u.iter().map(|s| s.to_string()));
        out.extend(y.iter().cloned());
        out.push(c1.to_string());
        out.extend(x.iter().cloned());
        out.extend(v.iter().map(|s| s.to_string()));
        ChordDiagram::from_tokens(&out)
    }

    /// Replaces the edge `c1 c2` of the circle graph by a path of length
    /// four through three new chords. Needs `c1` and `c2` to interlace with
    /// two endpoints adjacent on the circle. Returns the new diagram and the
    /// new chord labels in path order from `c1`.
    pub fn csorba_expand(&self, c1: &str, c2: &str) -> Result<(ChordDiagram, [String; 3]), ChordError> {
        let (a, b) = (self.chord(c1)?, self.chord(c2)?);
        if !self.interlace(a, b) {
            return Err(ChordError::NotApplicable(format!("chords {c1} and {c2} do not interlace")));
        }
        let len = self.word.len();
        let p = (0..len)
            .find(|&i| {
                let (s, t) = (self.word[i], self.word[(i + 1) % len]);
                (s == a && t == b) || (s == b && t == a)
            })
            .ok_or_else(|| ChordError::NotApplicable(format!("no adjacent endpoints of {c1} and {c2}")))?;
        let d = self.rotated(p);
        let taken = BTreeSet::new();
        let x = d.fresh_label("x", &taken);
        let y = d.fresh_label("y", &BTreeSet::from([x.clone()]));
        let z = d.fresh_label("z", &BTreeSet::from([x.clone(), y.clone()]));
        let toks = d.tokens();
        let (first, second) = (toks[0].to_string(), toks[1].to_string());
        // "f s" becomes "z s y z x y f x": path s - z - y - x - f.
        let mut out: Vec<String> =
            vec![z.clone(), second.clone(), y.clone(), z.clone(), x.clone(), y.clone(), first.clone(), x.clone()];
        out.extend(toks[2..].iter().map(|s| s.to_string()));
        let path = if first == c1 { [x, y, z] } else { [z, y, x] };
        Ok((ChordDiagram::from_tokens(&out)?, path))
    }

    /// Appends `k` disjoint crossing pairs at the end of the word.
    pub fn with_free_pairs(&self, k: usize, prefix: &str) -> ChordDiagram {
        let mut toks: Vec<String> = self.tokens().iter().map(|s| s.to_string()).collect();
        let mut taken = BTreeSet::new();
        for _ in 0..k {
            let p = self.fresh_label(prefix, &taken);
            taken.insert(p.clone());
            let q = self.fresh_label(prefix, &taken);
            taken.insert(q.clone());
            toks.extend([p.clone(), q.clone(), p, q]);
        }
        ChordDiagram::from_tokens(&toks).expect("fresh labels")
    }
}

fn relabel(seq: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    seq.iter()
        .map(|c| {
            let n = map.len();
            *map.entry(*c).or_insert(n)
        })
        .collect()
}

fn nest_free(ends: &[(usize, usize)], class: &[bool], which: bool) -> bool {
    let members: Vec<(usize, usize)> =
        ends.iter().zip(class).filter(|(_, &c)| c == which).map(|(e, _)| *e).collect();
    members.iter().all(|&(a0, a1)| {
        let inside = members.iter().any(|&(b0, b1)| (b0, b1) != (a0, a1) && a0 < b0 && b0 < a1);
        let outside = members.iter().any(|&(b0, b1)| (b0, b1) != (a0, a1) && !(a0 < b0 && b0 < a1));
        !(inside && outside)
    })
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tokens().join(" "))
    }
}

impl std::str::FromStr for ChordDiagram {
    type Err = ChordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    word: Vec<String>,
}

impl Serialize for ChordDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Repr { word: self.tokens().iter().map(|t| t.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChordDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = Repr::deserialize(d)?;
        ChordDiagram::from_tokens(&r.word).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::is_isomorphic;

    fn d(s: &str) -> ChordDiagram {
        ChordDiagram::parse(s).unwrap()
    }

    #[test]
    fn parse_and_errors() {
        assert_eq!(d("a b a b").chord_count(), 2);
        assert_eq!(d("").chord_count(), 0);
        assert_eq!(d("a b # comment\n a b").len(), 4);
        assert_eq!(
            ChordDiagram::parse("a b a").unwrap_err(),
            ChordError::Malformed { token: "b".into(), count: 1 }
        );
        assert!(ChordDiagram::parse("a a a").is_err());
    }

    #[test]
    fn interlacement() {
        assert_eq!(d("a b a b").intersection_graph().edge_count(), 1);
        assert_eq!(d("a b b a").intersection_graph().edge_count(), 0);
        assert!(is_isomorphic(&d("a b c a b c").intersection_graph(), &Graph::cycle(3)));
        // This word spells a path, not a triangle: chords a and c are apart.
        assert!(is_isomorphic(&d("a b a c b c").intersection_graph(), &Graph::path(2)));
    }

    #[test]
    fn alternation_oracle() {
        let w = d("a c b d a e c b e d");
        let g = w.intersection_graph();
        for a in 0..w.chord_count() {
            for b in 0..w.chord_count() {
                if a == b {
                    continue;
                }
                // Pattern test: read the word restricted to a and b.
                let sub: Vec<usize> = w.word().iter().copied().filter(|&c| c == a || c == b).collect();
                let alternating = sub[0] != sub[1] && sub[1] != sub[2] && sub[2] != sub[3];
                assert_eq!(g.has_edge(Vertex(a as u32), Vertex(b as u32)), alternating);
            }
        }
    }

    #[test]
    fn permutation_splits() {
        assert_eq!(d("a b a b").is_permutation(), Some((0, 2)));
        assert!(d("a b b a").is_permutation().is_some());
        assert!(d("a a b b").is_permutation().is_some());
        assert!(d("a a b b c c").is_permutation().is_none());
        assert_eq!(d("").is_permutation(), Some((0, 0)));
    }

    #[test]
    fn non_nested() {
        assert!(d("a b a b").is_non_nested());
        assert!(d("").is_non_nested());
        assert!(!d("a b c a b c").is_non_nested());
        let (hex, _) = d("a b c a b c").csorba_expand("a", "b").unwrap();
        assert!(is_isomorphic(&hex.intersection_graph(), &Graph::cycle(6)));
        assert!(hex.is_non_nested());
    }

    #[test]
    fn wedge_examples() {
        let w = d("a b a b").wedge("a", &d("a b a b"), "a").unwrap();
        assert_eq!(w.chord_count(), 3);
        assert!(is_isomorphic(&w.intersection_graph(), &Graph::path(2)));

        let t = d("a b c a b c");
        let w = t.wedge("a", &t, "a").unwrap();
        assert!(is_isomorphic(&w.intersection_graph(), &Graph::triangle_bouquet(2)));

        let w = t.wedge("b", &d("z z"), "z").unwrap();
        assert!(is_isomorphic(&w.intersection_graph(), &t.intersection_graph()));
        assert!(t.wedge("q", &t, "a").is_err());
    }

    #[test]
    fn csorba_examples() {
        let (e, path) = d("a b a b").csorba_expand("a", "b").unwrap();
        assert_eq!(e.chord_count(), 5);
        assert!(is_isomorphic(&e.intersection_graph(), &Graph::path(4)));
        let g = e.intersection_graph();
        let a = g.find("a").unwrap();
        assert!(g.has_edge(a, g.find(&path[0]).unwrap()));
        assert!(d("a b b a").csorba_expand("a", "b").is_err());
        // Interlaced but no adjacent endpoints.
        assert!(d("a c b d a c b d").csorba_expand("a", "b").is_err());
    }

    #[test]
    fn canonical_form_is_invariant() {
        let w = d("a b c a b c");
        let r = w.rotated(2);
        assert_eq!(w.canonical(), r.canonical());
        let rev = ChordDiagram::from_tokens(&w.tokens().into_iter().rev().collect::<Vec<_>>()).unwrap();
        assert_eq!(w.canonical(), rev.canonical());
        assert_eq!(d("x y x y").canonical().to_string(), "a b a b");
        assert_eq!(d("q p p q").canonical().to_string(), "a a b b");
    }

    #[test]
    fn labels_and_json() {
        assert_eq!(label_name(0), "a");
        assert_eq!(label_name(25), "z");
        assert_eq!(label_name(26), "aa");
        assert_eq!(label_name(27), "ab");
        let w = d("a b a b");
        let j = serde_json::to_string(&w).unwrap();
        assert_eq!(j, r#"{"word":["a","b","a","b"]}"#);
        assert_eq!(serde_json::from_str::<ChordDiagram>(&j).unwrap(), w);
        assert!(serde_json::from_str::<ChordDiagram>(r#"{"word":["a"]}"#).is_err());
    }
}
