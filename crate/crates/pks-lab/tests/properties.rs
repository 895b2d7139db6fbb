use pks_lab::*;
use proptest::prelude::*;

proptest! {
    #[test]
    fn every_colouring_is_inconsistent(bits in 0u64..(1 << 33)) {
        let s = PeresSet::build();
        let c = PeresColouring(bits);
        prop_assert!(!check_consistent(&s, c));
        prop_assert!(!pks_sets_containing(&s, c).is_empty());
    }

    #[test]
    fn symmetry_permutes_pks_sets(bits in 0u64..(1 << 33), k in 0usize..24) {
        let s = PeresSet::build();
        let g = &symmetry_group(&s)[k];
        let c = PeresColouring(bits);
        let moved = PeresColouring(g.act_colouring(bits));
        prop_assert_eq!(pks_sets_containing(&s, c).len(), pks_sets_containing(&s, moved).len());
        prop_assert_eq!(c.0.count_ones(), moved.0.count_ones());
    }

    #[test]
    fn symbolic_membership(green in 0u64..(1 << 33), red in 0u64..(1 << 33), bits in 0u64..(1 << 33)) {
        let e = SymbolicEvent { green, red };
        let c = PeresColouring(bits);
        let expect = green & red == 0 && bits & green == green && bits & red == 0;
        prop_assert_eq!(e.contains(c), expect);
    }
}
