use std::collections::HashSet;

use num_bigint::BigUint;

use sandpile::configuration::{is_valid_ipm, is_valid_spm, Configuration};
use sandpile::counting::CountTable;
use sandpile::decompose::{decompose_full, recompose_full};
use sandpile::generation::generate_spm;
use sandpile::genseq::{fall_prime, generating_sequence, verify_sequence};
use sandpile::ipm::{
    ipm_decompose, ipm_expand, ipm_generate, ipm_recompose, ipm_reduce, ipm_staircase,
    ipm_staircase_width, IpmBasis, IpmCountTable,
};
use sandpile::oracle::{bfs_ipm, bfs_spm, partitions, Rule};
use sandpile::staircase::{expand, reduce, staircase, staircase_width};

fn valid_partitions<P: Fn(&Configuration) -> bool>(n: usize, keep: P) -> HashSet<Configuration> {
    let mut out = HashSet::new();
    partitions(n, |p| {
        let c = Configuration::new(p.to_vec()).unwrap();
        if keep(&c) {
            out.insert(c);
        }
    });
    out
}

#[test]
fn spm_counts_generation_and_patterns_match_the_oracle() {
    let table = CountTable::new(24);
    for n in 0..=24 {
        let oracle = bfs_spm(n).unwrap().members;
        assert_eq!(table.count_spm(n).unwrap(), BigUint::from(oracle.len()));
        let mut generated = HashSet::new();
        generate_spm(n, |c| assert!(generated.insert(c.clone())));
        assert_eq!(generated, oracle, "n = {}", n);
        assert_eq!(valid_partitions(n, |c| is_valid_spm(c).is_valid()), oracle);
    }
}

#[test]
fn ipm_counts_generation_and_patterns_match_the_oracle() {
    for k in 2..=4 {
        let table = IpmCountTable::new(20, k);
        for n in 0..=20 {
            let oracle = bfs_ipm(n, k).unwrap().members;
            assert_eq!(table.count(n).unwrap(), BigUint::from(oracle.len()), "n={} k={}", n, k);
            let mut generated = HashSet::new();
            ipm_generate(n, k, &table, |c| assert!(generated.insert(c.clone()))).unwrap();
            assert_eq!(generated, oracle, "n={} k={}", n, k);
            assert_eq!(valid_partitions(n, |c| is_valid_ipm(c, k).is_valid()), oracle);
        }
    }
}

#[test]
fn reduced_forms_of_oracle_members_round_trip() {
    for n in 0..=22 {
        for c in bfs_spm(n).unwrap().members {
            let r = reduce(&c).unwrap();
            assert_eq!(expand(&r), c);
            assert_eq!(recompose_full(&decompose_full(&r)).unwrap(), r);
        }
    }
}

#[test]
fn certificates_replay_and_have_the_bfs_length() {
    for n in 0..=20 {
        let r = bfs_spm(n).unwrap();
        for c in &r.members {
            let seq = generating_sequence(c).unwrap();
            assert_eq!(verify_sequence(n, &seq).unwrap(), *c);
            // every FALL raises sum(i * c_i) by one, so all paths have one length
            assert_eq!(seq.len(), r.depth[c]);
        }
    }
}

#[test]
fn fall_prime_commutes_with_fall_on_oracle_edges() {
    for n in 1..=20 {
        for e in bfs_spm(n).unwrap().edges {
            let w = staircase_width(&e.from);
            if e.column >= w || staircase_width(&e.to) != w {
                continue;
            }
            let image = fall_prime(reduce(&e.from).unwrap().entries(), e.column).unwrap();
            assert_eq!(reduce(&e.to).unwrap().entries(), &image[..]);
        }
    }
}

#[test]
fn widths_never_decrease_along_moves() {
    for n in 1..=22 {
        let r = bfs_spm(n).unwrap();
        for e in &r.edges {
            assert!(staircase_width(&e.from) <= staircase_width(&e.to));
        }
        for c in &r.members {
            assert!(staircase(staircase_width(c)).sequence_leq(c));
        }
    }
    for k in 2..=3 {
        for n in 1..=20 {
            for e in bfs_ipm(n, k).unwrap().edges {
                let a = ipm_staircase_width(&e.from, k).unwrap();
                let b = ipm_staircase_width(&e.to, k).unwrap();
                assert!(ipm_staircase(&a).sequence_leq(&ipm_staircase(&b)));
                assert!(a <= b);
            }
        }
    }
}

#[test]
fn ipm_structure_of_oracle_members() {
    for k in 2..=4 {
        for n in 1..=20 {
            let r = bfs_ipm(n, k).unwrap();
            assert!(r.edges.iter().all(|e| e.from.weight() == e.to.weight()));
            for c in &r.members {
                let b = ipm_staircase_width(c, k).unwrap();
                // the column right after the staircase and its first gap is empty
                assert_eq!(c.get(b.l + k * (b.w - 1) + 1), 0);
                // bounded by (w) . s(w, k) where w is the first column
                let w = c.get(0) as usize;
                let mut cap = vec![w as u32];
                cap.extend(ipm_staircase(&IpmBasis::new(k, w, k).unwrap()).into_parts());
                assert!(c.parts().iter().zip(cap.iter().chain(std::iter::repeat(&0))).all(|(a, b)| a <= b));
                assert!(c.len() <= cap.len());

                let red = ipm_reduce(c, k).unwrap();
                assert_eq!(ipm_expand(&red).unwrap(), *c);
                let d = ipm_decompose(&red).unwrap();
                assert_eq!(ipm_recompose(&d, red.basis()).unwrap(), red);
            }
        }
    }
}

#[test]
fn slides_are_recorded_with_their_span() {
    let r = bfs_ipm(9, 3).unwrap();
    let slides: Vec<_> = r
        .edges
        .iter()
        .filter_map(|e| match e.rule {
            Rule::Slide { span } => Some(span),
            Rule::Fall => None,
        })
        .collect();
    assert!(!slides.is_empty());
    assert!(slides.iter().all(|&s| (1..3).contains(&s)));
}
