use proptest::prelude::*;

use torus_ps::codec::{binomial, decode, encode, parse_bits, bits_to_tree, tree_to_bits, rank, unrank};
use torus_ps::map::canon::{bfs_relabel, is_isomorphic};
use torus_ps::oracle::gen_random;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn encode_decode_is_isomorphic(n in 1usize..60, seed in any::<u64>()) {
        let g = gen_random(n, seed);
        let back = decode(&encode(&g).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&back, &g));
    }

    #[test]
    fn code_ignores_labels(n in 2usize..40, seed in any::<u64>()) {
        let g = gen_random(n, seed);
        prop_assert_eq!(encode(&g).unwrap(), encode(&bfs_relabel(&g)).unwrap());
    }

    #[test]
    fn rank_unrank_inverse(word in proptest::collection::vec(any::<bool>(), 1..200)) {
        let ones = word.iter().filter(|&&b| b).count();
        let r = rank(&word, ones).unwrap();
        prop_assert!(r < binomial(word.len() as u64, ones as u64));
        prop_assert_eq!(unrank(word.len(), ones, &r).unwrap(), word);
    }

    #[test]
    fn tree_words_survive_parsing(n in 1usize..50, seed in any::<u64>()) {
        let g = gen_random(n, seed);
        let (_, rep) = torus_ps::codec::encode_report(&g).unwrap();
        let s = torus_ps::codec::bits_to_string(&rep.word);
        let w = parse_bits(&s).unwrap();
        prop_assert_eq!(&w, &rep.word);
        if let Ok(t) = bits_to_tree(&w) {
            prop_assert_eq!(tree_to_bits(&t).unwrap(), w);
        }
    }
}
