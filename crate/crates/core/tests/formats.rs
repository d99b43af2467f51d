mod common;

use common::{arb_bipartite, arb_graph};
use proptest::prelude::*;
use twinstab::chibound::chi_bounded_color;
use twinstab::contraction::{heuristic_sequence, DEFAULT_BUDGET};
use twinstab::gen;
use twinstab::io::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gr_round_trip(g in arb_graph(12)) {
        prop_assert_eq!(parse_gr(&write_gr(&g)).unwrap(), GraphFile::Plain(g));
    }

    #[test]
    fn btww_round_trip(g in arb_bipartite(6)) {
        let text = write_bipartite_gr(&g).unwrap();
        prop_assert_eq!(parse_gr(&text).unwrap(), GraphFile::Bipartite(g));
    }

    #[test]
    fn tww_round_trip(n in 1usize..20, d in 0usize..4, seed: u64) {
        let (_, t) = gen::random_tww(n, d, &mut gen::rng(seed));
        let back = parse_tww(&write_tww(&t), n).unwrap();
        prop_assert_eq!(back.to_contractions(), t.to_contractions());
    }

    #[test]
    fn cert_round_trip(g in arb_graph(8)) {
        let c = chi_bounded_color(&g, &heuristic_sequence(&g, DEFAULT_BUDGET)).unwrap();
        let text = write_cert("chi-certificate", &c).unwrap();
        prop_assert_eq!(read_cert::<twinstab::chibound::ChiCertificate>(&text, "chi-certificate").unwrap(), c);
        prop_assert!(read_cert::<twinstab::chibound::ChiCertificate>(&text, "decomposition").is_err());
    }
}

#[test]
fn malformed_inputs() {
    assert!(parse_gr("p tww 3 2\n1 2\n").is_err());
    assert!(parse_gr("p tww 2 1\n1 3\n").is_err());
    assert!(parse_gr("p tww 2 1\n1 x\n").is_err());
    assert!(parse_gr("c only a comment\n").is_err());
    assert!(parse_tww("1 2\n", 3).is_err());
    assert!(parse_tww("1 1\n2 3\n", 3).is_err());
    assert!(read_cert::<u32>("{\"version\":9,\"kind\":\"x\",\"body\":1}", "x").is_err());
}
