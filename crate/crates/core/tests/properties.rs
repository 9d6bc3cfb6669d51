use num_bigint::BigUint;
use pfchain::counting::{log2_big, pf_count};
use pfchain::entanglement::{entropy, schmidt_spectrum, SchmidtModel};
use pfchain::markov::{bubble_path, hopping_chain, pd_chain, pf_chain, HopVariant};
use pfchain::paircount::pf_pairs;
use pfchain::spectra::{
    build_hamiltonian, low_spectrum, HamiltonianParams, Model, SolverOptions, Subspace,
};
use pfchain::words::{neighbors, reduce, IrreducibleString, Word};
use proptest::prelude::*;

fn word_strategy(dmax: u8, lmax: usize) -> impl Strategy<Value = Word> {
    (2..=dmax).prop_flat_map(move |d| {
        prop::collection::vec(1..=d, 0..=lmax).prop_map(move |l| Word::new(d, l).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn flips_preserve_reduction(w in word_strategy(5, 16)) {
        let r = reduce(&w);
        for v in neighbors(&w) {
            prop_assert_eq!(reduce(&v), r.clone());
        }
    }

    #[test]
    fn reduction_is_idempotent(w in word_strategy(5, 16)) {
        let r = reduce(&w);
        let again = reduce(&Word::new(w.d(), r.letters().to_vec()).unwrap());
        prop_assert_eq!(again, r);
    }

    #[test]
    fn counts_partition_all_words(d in 2u8..=6, len in 0usize..=40) {
        let mut words = BigUint::from(0u32);
        let mut pairs = BigUint::from(0u32);
        for k in (len % 2..=len).step_by(2) {
            let labels = BigUint::from(IrreducibleString::count(d, k));
            let n = ((len - k) / 2) as u64;
            words += pf_count(d as u32, n, k as u64) * &labels;
            pairs += pf_pairs(d as u32, n, k as u64).total * &labels;
        }
        prop_assert_eq!(words, BigUint::from(d as u32).pow(len as u32));
        // each of len-1 bonds is an equal pair in d^(len-1) words
        let want = if len == 0 { BigUint::from(0u32) } else { BigUint::from(d as u32).pow(len as u32 - 1) * (len as u32 - 1) };
        prop_assert_eq!(pairs, want);
    }

    #[test]
    fn schmidt_spectra_normalised(d in 2u32..=6, m in 1usize..=40) {
        let s = schmidt_spectrum(SchmidtModel::Pf { d }, 4 * m).unwrap();
        prop_assert!(s.is_normalized());
        let e = entropy(&s).unwrap();
        prop_assert!(e.entropy_bits >= 0.0 && e.entropy_bits <= log2_big(&s.rank()) + 1e-9);
    }

    #[test]
    fn dyck_and_motzkin_normalised(s in 1u32..=4, half in 1usize..=60) {
        let dyck = schmidt_spectrum(SchmidtModel::ColoredDyck { s }, 2 * half).unwrap();
        prop_assert!(dyck.is_normalized());
        prop_assert!(schmidt_spectrum(SchmidtModel::Motzkin, 2 * half).unwrap().is_normalized());
    }

    #[test]
    fn hopping_chains_reversible(l in 2usize..=7, k in 1usize..=3, v in 0usize..3, d in 3u8..=5) {
        prop_assume!(k <= l);
        let variant = [HopVariant::PfWeighted, HopVariant::CatalanWeighted, HopVariant::Cwmh][v];
        let c = hopping_chain(d, l, k, variant).unwrap();
        prop_assert!(c.rows_sum_to_one());
        prop_assert!(c.is_reversible());
        prop_assert!(c.is_stationary());
        prop_assert!(c.min_self_loop() >= num_rational::BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn bubble_moves_are_flips(w in word_strategy(4, 12), i in 0usize..11, j in 0usize..11, c in 1u8..=4) {
        let l = w.letters();
        prop_assume!(l.len() >= 2 && i + 1 < l.len() && j + 1 < l.len() && l[i] == l[i + 1] && c <= w.d());
        let path = bubble_path(l, i, j, c).unwrap();
        let mut short = l[..i].to_vec();
        short.extend_from_slice(&l[i + 2..]);
        let mut target = short[..j].to_vec();
        target.extend([c, c]);
        target.extend_from_slice(&short[j..]);
        prop_assert_eq!(path.last().unwrap(), &target);
        for e in path.windows(2) {
            let diff: Vec<usize> = (0..l.len()).filter(|&k| e[0][k] != e[1][k]).collect();
            prop_assert_eq!(diff.len(), 2);
            prop_assert_eq!(diff[1], diff[0] + 1);
            prop_assert_eq!(e[0][diff[0]], e[0][diff[1]]);
        }
    }

    #[test]
    fn hamiltonians_are_psd(d in 2u8..=3, n in 2usize..=8, k in 0usize..=4) {
        prop_assume!(k <= n && (n - k) % 2 == 0);
        let s = IrreducibleString::canonical(d, k);
        let p = HamiltonianParams { subspace: Subspace::Reduced(s.letters().to_vec()), ..HamiltonianParams::new(Model::Pf { d }, n) };
        let op = build_hamiltonian(&p).unwrap();
        prop_assert!(op.is_symmetric());
        let spec = low_spectrum(&op, 1, &SolverOptions::default()).unwrap();
        prop_assert!(spec.values[0].abs() < 1e-10);
    }
}

#[test]
fn pf_and_pd_chains_exact() {
    for d in 3..=4u8 {
        for n in 1..=3 {
            let pf = pf_chain(d, n, 1 << 20).unwrap();
            let pd = pd_chain(d, n, 1 << 20).unwrap();
            for c in [&pf, &pd] {
                assert!(c.rows_sum_to_one() && c.is_reversible() && c.is_stationary());
            }
        }
    }
}
