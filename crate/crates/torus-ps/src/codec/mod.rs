//! Encoding triangulations as compact containers.
//!
//! Container layout: `TPS1`, version byte `1`, `n` as LEB128, then one
//! big-endian bit stream padded with zeros to a byte boundary: the two stem
//! indices (`w_s` bits each), the two target corner indices (`w_t` bits
//! each) and the payload rank (`w_p` bits). The widths are the bit lengths
//! of the largest values allowed for `n`: `2n`, `4n - 2` and
//! `C(4n - 2, n - 1) - 1`.

pub mod rank;
pub mod tree;

use malachite_base::num::logic::traits::{BitConvertible, SignificantBits};
use malachite_nz::natural::Natural;

use crate::build::{minimal_rooted, BuildReport};
use crate::closure::recover_rooted;
use crate::error::{AtStage, Error, Stage, StageError};
use crate::map::canon::bfs_relabel;
use crate::map::homology::Homology;
use crate::map::TorusMap;
use crate::ps::{check_unicellular, run_ps};
pub use rank::{binomial, rank, unrank, width_of};
pub use tree::{bits_to_string, bits_to_tree, cut_special_edges, parse_bits, reattach, tree_to_bits, SpecialRecord};

pub const MAGIC: &[u8; 4] = b"TPS1";
pub const VERSION: u8 = 1;

/// Field widths in bits for `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Widths {
    pub stem: u64,
    pub target: u64,
    pub payload: u64,
}

impl Widths {
    pub fn for_n(n: usize) -> Widths {
        let n = n as u64;
        Widths {
            stem: width_of(&Natural::from(2 * n + 1)),
            target: width_of(&Natural::from(4 * n - 1)),
            payload: width_of(&binomial(4 * n - 2, n - 1)),
        }
    }
}

/// Decoded container contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Container {
    pub n: usize,
    pub records: [SpecialRecord; 2],
    pub rank: Natural,
}

fn push_bits(out: &mut Vec<bool>, x: &Natural, width: u64) {
    let bits = x.to_bits_asc();
    for i in (0..width as usize).rev() {
        out.push(bits.get(i).copied().unwrap_or(false));
    }
}

impl Container {
    pub fn to_bytes(&self) -> Vec<u8> {
        let w = Widths::for_n(self.n);
        let mut out = MAGIC.to_vec();
        out.push(VERSION);
        leb128::write::unsigned(&mut out, self.n as u64).unwrap();
        let mut bits = Vec::new();
        for r in &self.records {
            push_bits(&mut bits, &Natural::from(r.stem_index as u64), w.stem);
        }
        for r in &self.records {
            push_bits(&mut bits, &Natural::from(r.target_angle_index as u64), w.target);
        }
        push_bits(&mut bits, &self.rank, w.payload);
        for chunk in bits.chunks(8) {
            out.push(chunk.iter().enumerate().fold(0u8, |b, (i, &x)| b | (x as u8) << (7 - i)));
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Container, Error> {
        if bytes.len() < 5 || &bytes[..4] != MAGIC {
            return Err(Error::Container("bad magic".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::Container(format!("unsupported version {}", bytes[4])));
        }
        let mut rest = &bytes[5..];
        let n = leb128::read::unsigned(&mut rest).map_err(|_| Error::InvalidWord)?;
        if n == 0 || n > u32::MAX as u64 {
            return Err(Error::InvalidWord);
        }
        let n = n as usize;
        let w = Widths::for_n(n);
        let total = 2 * w.stem + 2 * w.target + w.payload;
        if rest.len() as u64 != total.div_ceil(8) {
            return Err(Error::InvalidWord);
        }
        let bit = |i: u64| rest[(i / 8) as usize] >> (7 - i % 8) & 1 == 1;
        if (total..8 * rest.len() as u64).any(bit) {
            return Err(Error::InvalidWord);
        }
        let mut at = 0u64;
        let mut take = |width: u64| -> Natural {
            let mut asc: Vec<bool> = (at..at + width).map(bit).collect();
            asc.reverse();
            at += width;
            Natural::from_bits_asc(asc.into_iter())
        };
        let s = [take(w.stem), take(w.stem)];
        let t = [take(w.target), take(w.target)];
        let rank = take(w.payload);
        let small = |x: &Natural| -> Result<usize, Error> {
            if x.significant_bits() > 63 {
                return Err(Error::InvalidWord);
            }
            Ok(u64::try_from(x).map_err(|_| Error::InvalidWord)? as usize)
        };
        let records = [
            SpecialRecord { stem_index: small(&s[0])?, target_angle_index: small(&t[0])? },
            SpecialRecord { stem_index: small(&s[1])?, target_angle_index: small(&t[1])? },
        ];
        Ok(Container { n, records, rank })
    }

    /// Size in bits of the serialized form.
    pub fn bit_len(&self) -> u64 {
        8 * self.to_bytes().len() as u64
    }
}

/// What [`encode_report`] saw along the way.
#[derive(Clone, Debug)]
pub struct EncodeReport {
    pub n: usize,
    pub build: BuildReport,
    pub payload_bits: u64,
    pub total_bits: u64,
    pub word: Vec<bool>,
}

pub fn encode_container(g: &TorusMap) -> Result<(Container, EncodeReport), StageError> {
    g.check_triangulation().at(Stage::Map)?;
    let g = &bfs_relabel(g);
    let hom = Homology::new(g);
    let (o, a0, build) = minimal_rooted(g, &hom).at(Stage::Build)?;
    let out = run_ps(g, &o, a0);
    check_unicellular(g, &out).map_err(|_| Error::NotUnicellular).at(Stage::Traversal)?;
    let (tree, records) = cut_special_edges(&out.u).at(Stage::Codec)?;
    let word = tree_to_bits(&tree).at(Stage::Codec)?;
    let r = rank(&word, g.n() - 1).at(Stage::Codec)?;
    let c = Container { n: g.n(), records, rank: r };
    let w = Widths::for_n(g.n());
    let total_bits = 8 * (5 + leb_len(g.n() as u64) + (2 * w.stem + 2 * w.target + w.payload).div_ceil(8));
    let rep = EncodeReport { n: g.n(), build, payload_bits: w.payload, total_bits, word };
    Ok((c, rep))
}

fn leb_len(mut x: u64) -> u64 {
    let mut k = 1;
    while x >= 0x80 {
        x >>= 7;
        k += 1;
    }
    k
}

pub fn encode(g: &TorusMap) -> Result<Vec<u8>, StageError> {
    Ok(encode_container(g)?.0.to_bytes())
}

pub fn encode_report(g: &TorusMap) -> Result<(Vec<u8>, EncodeReport), StageError> {
    let (c, r) = encode_container(g)?;
    Ok((c.to_bytes(), r))
}

pub fn decode(bytes: &[u8]) -> Result<TorusMap, StageError> {
    let c = Container::from_bytes(bytes).at(Stage::Codec)?;
    decode_container(&c)
}

pub fn decode_container(c: &Container) -> Result<TorusMap, StageError> {
    let word = unrank(4 * c.n - 2, c.n - 1, &c.rank).map_err(|_| Error::InvalidWord).at(Stage::Codec)?;
    let tree = bits_to_tree(&word).at(Stage::Codec)?;
    let u = reattach(&tree, &c.records).at(Stage::Codec)?;
    Ok(recover_rooted(&u).at(Stage::Closure)?.map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::canon::is_isomorphic;
    use crate::oracle::{gen_k7, gen_one_vertex, gen_random};

    #[test]
    fn k7_round_trip() {
        let g = gen_k7();
        let (bytes, rep) = encode_report(&g).unwrap();
        assert_eq!(rep.payload_bits, 18);
        assert_eq!(rep.total_bits, 8 * bytes.len() as u64);
        assert!(is_isomorphic(&decode(&bytes).unwrap(), &g));
    }

    #[test]
    fn one_vertex_has_empty_payload() {
        let g = gen_one_vertex();
        let (bytes, rep) = encode_report(&g).unwrap();
        assert_eq!(rep.payload_bits, 0);
        assert!(is_isomorphic(&decode(&bytes).unwrap(), &g));
    }

    #[test]
    fn random_round_trips() {
        for seed in 0..30u64 {
            let g = gen_random(3 + seed as usize, seed);
            let bytes = encode(&g).unwrap();
            assert!(is_isomorphic(&decode(&bytes).unwrap(), &g), "seed {seed}");
        }
    }

    #[test]
    fn truncated_container_is_an_invalid_word() {
        let bytes = encode(&gen_k7()).unwrap();
        let e = decode(&bytes[..bytes.len() - 1]).unwrap_err();
        assert_eq!(e.to_string(), "stage: codec, error: invalid word");
        let e = decode(b"XPS1\x01\x07").unwrap_err();
        assert_eq!(e.source, Error::Container("bad magic".into()));
    }

    #[test]
    fn container_round_trip() {
        let c = Container {
            n: 7,
            records: [
                SpecialRecord { stem_index: 3, target_angle_index: 20 },
                SpecialRecord { stem_index: 14, target_angle_index: 0 },
            ],
            rank: Natural::from(230229u32),
        };
        assert_eq!(Container::from_bytes(&c.to_bytes()).unwrap(), c);
    }
}
