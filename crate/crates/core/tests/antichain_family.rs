use stacksort::antichain::{
    constructive_sort_deletion, g_minus_one, generate_gi, generate_git, lift_basis_element,
    membership_report, verify_basis_membership, AntichainError,
};
use stacksort::basis::{run_length_sweep, SweepOptions};
use stacksort::machine::{decide_sortable, validate_trace};
use stacksort::perm::{is_antichain, Permutation};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

#[test]
fn listed_members() {
    assert_eq!(generate_gi(0), p("2 4 3 7 6 1 10 5 9 13 12 8 14 15 11"));
    assert_eq!(
        generate_git(1, 5),
        p("2 4 3 7 6 1 10 5 9 13 12 8 16 11 15 19 18 14 20 21 22 23 17")
    );
}

#[test]
fn first_members_are_basis_elements() {
    for i in 0..=3 {
        let g = generate_gi(i);
        let r = membership_report(&g, 3);
        assert!(!r.sortable, "G_{i}");
        assert!(
            r.unsortable_deletions.is_empty(),
            "G_{i}: {:?}",
            r.unsortable_deletions
        );
    }
    assert!(verify_basis_membership(&g_minus_one(), 3));
}

#[test]
fn members_are_pairwise_incomparable() {
    let members: Vec<Permutation> = (0..=3).map(generate_gi).collect();
    for a in &members {
        for b in &members {
            assert_eq!(a.contains(b), a == b, "{a} / {b}");
        }
    }
    let with_excluded: Vec<Permutation> = std::iter::once(g_minus_one()).chain(members).collect();
    assert!(is_antichain(&with_excluded));
}

#[test]
fn deeper_members_are_basis_elements() {
    for t in 4..=5 {
        for i in 0..=1 {
            assert!(
                verify_basis_membership(&generate_git(i, t), t),
                "i={i} t={t}"
            );
        }
    }
}

#[test]
fn every_scripted_deletion_sorts_and_agrees_with_decider() {
    for i in 0..=3 {
        let g = generate_gi(i);
        for pos in 1..=g.len() {
            let reduced = g.delete_at(pos).unwrap();
            let trace = constructive_sort_deletion(i, pos)
                .unwrap_or_else(|e| panic!("G_{i} minus {pos}: {e}"));
            assert!(validate_trace(&reduced, 3, &trace));
            assert!(decide_sortable(&reduced, 3));
        }
    }
}

#[test]
fn scripted_traces_never_sort_the_full_member() {
    let g = generate_gi(1);
    let trace = constructive_sort_deletion(1, 4).unwrap();
    assert!(!validate_trace(&g, 3, &trace));
}

#[test]
fn lifting_short_basis_elements() {
    assert_eq!(lift_basis_element(&p("231"), 1).unwrap(), p("546231"));
    let report = run_length_sweep(6, 3, None, SweepOptions::default()).unwrap();
    assert_eq!(report.basis.len(), 9);
    for rec in &report.basis {
        let lifted = lift_basis_element(&rec.perm, 3).unwrap();
        assert!(verify_basis_membership(&lifted, 4));
        assert!(lifted == rec.perm || lifted.len() == rec.perm.len() + 3);
    }
}

#[test]
fn lifting_rejects_non_basis_input() {
    assert!(matches!(
        lift_basis_element(&p("243651"), 3),
        Err(AntichainError::NotABasisElement(..))
    ));
}
