use super::*;
use crate::lang::parse_model;
use crate::model::AtomicConstraint;
use crate::model::ClockId;

fn zone(clocks: usize, cells: &[(usize, usize, Bound<Time>)]) -> Zone {
    Zone::from_constraints(clocks, cells.iter().copied()).unwrap().canonicalize()
}

#[test]
fn initial_core_delays_from_origin() {
    let n = parse_model("agent A { clock x; init l0; loc l0 { } }").unwrap();
    let c = initial_core(&n).unwrap();
    let expected = zone(2, &[(1, 2, Bound::le(0)), (2, 1, Bound::le(0))]);
    assert_eq!(c.zone, expected);
    assert_eq!(c.zone.render(&clock_names(&n)), "0 <= x & 0 <= _f & x - _f <= 0 & _f - x <= 0");
}

#[test]
fn initial_core_respects_invariant() {
    let n = parse_model("agent A { clock x; init l0; loc l0 { invariant x <= 5; } }").unwrap();
    let c = initial_core(&n).unwrap();
    let expected = zone(
        2,
        &[(1, 2, Bound::le(0)), (2, 1, Bound::le(0)), (1, 0, Bound::le(5))],
    );
    assert_eq!(c.zone, expected);
    assert_eq!(c.zone.upper(2), Bound::le(5));
}

#[test]
fn initial_core_rejects_empty_invariant() {
    let mut n = parse_model("agent A { clock x; init l0; loc l0 { } }").unwrap();
    n.agents[0].locations[0].invariant.conjuncts = vec![
        AtomicConstraint { clock: ClockId(0), relation: Relation::Ge, bound: 1 },
        AtomicConstraint { clock: ClockId(0), relation: Relation::Le, bound: 0 },
    ];
    assert_eq!(initial_core(&n), Err(SemanticsError::EmptyInitialZone));
}

#[test]
fn two_private_moves() {
    let n = parse_model("agent A { init l0; loc l0 { } loc l1 { } edge l0 -> l1 on a; edge l0 -> l0 on b; }")
        .unwrap();
    let c = initial_core(&n).unwrap();
    assert_eq!(enabled_moves(&n, &c).len(), 2);
}

#[test]
fn shared_action_blocks_without_partner_edge() {
    let n = parse_model(
        "agent A { init a0; loc a0 { } loc a1 { } edge a0 -> a1 on s; }
         agent B { init b0; loc b0 { } loc b1 { } edge b1 -> b0 on s; edge b0 -> b1 on t; }",
    )
    .unwrap();
    let c = initial_core(&n).unwrap();
    let moves = enabled_moves(&n, &c);
    assert_eq!(moves.len(), 1);
    assert_eq!(n.action_name(moves[0].action), "t");
}

#[test]
fn shared_action_is_cross_product() {
    let n = parse_model(
        "agent A { init a; loc a { } loc b { } edge a -> a on s; edge a -> b on s; }
         agent B { init a; loc a { } loc b { } edge a -> a on s; edge a -> b on s; }",
    )
    .unwrap();
    let c = initial_core(&n).unwrap();
    let moves = enabled_moves(&n, &c);
    assert_eq!(moves.len(), 4);
    assert!(moves.iter().all(|m| m.participants.len() == 2));
}

#[test]
fn unreachable_guard_disables_move() {
    let n = parse_model(
        "agent A { clock x; init l0; loc l0 { invariant x <= 8; } loc l1 { } edge l0 -> l1 on a when x >= 10; }",
    )
    .unwrap();
    let c = initial_core(&n).unwrap();
    assert!(enabled_moves(&n, &c).is_empty());
}

#[test]
fn target_invariant_disables_move() {
    let n = parse_model(
        "agent A { clock x, y; init l0; loc l0 { invariant x <= 2; } loc l1 { invariant y <= 1; } edge l0 -> l1 on a when x >= 2; }",
    )
    .unwrap();
    let c = initial_core(&n).unwrap();
    assert!(enabled_moves(&n, &c).is_empty());
}

#[test]
fn guarded_reset_successor() {
    let n = parse_model(
        "agent A { clock x; init l0; loc l0 { } loc l1 { } edge l0 -> l1 on a when x >= 1 reset {x}; }",
    )
    .unwrap();
    let c = initial_core(&n).unwrap();
    let m = enabled_moves(&n, &c).remove(0);
    let interval = TimeInterval::closed(0, 1).unwrap();
    let next = apply_move(&n, &c, &m, &max_constants(&n, Some(&interval))).unwrap();
    assert_eq!(next.loc.0, vec![LocationId(1)]);
    // f - x stays the delay spent before the reset, which was at least 1.
    let exact = zone(2, &[(1, 2, Bound::le(-1))]);
    assert_eq!(next.zone, exact);
    let loose = zone(2, &[(1, 2, Bound::le(0)), (0, 2, Bound::le(-1))]);
    assert!(loose.includes(&next.zone).unwrap());
}

#[test]
fn unguarded_move_keeps_zone() {
    let n = parse_model("agent A { clock x; init l0; loc l0 { } loc l1 { } edge l0 -> l1 on a; }").unwrap();
    let c = initial_core(&n).unwrap();
    let m = enabled_moves(&n, &c).remove(0);
    let next = apply_move(&n, &c, &m, &max_constants(&n, None)).unwrap();
    assert_eq!(next.zone, c.zone);
}

#[test]
fn synchronised_resets_both_clocks() {
    let n = parse_model(
        "agent A { clock x; init a; loc a { } loc b { } edge a -> b on s when x >= 2 reset {x}; }
         agent B { clock y; init a; loc a { } loc b { } edge a -> b on s reset {y}; }",
    )
    .unwrap();
    let c = initial_core(&n).unwrap();
    let m = enabled_moves(&n, &c).remove(0);
    assert_eq!(m.resets(&n), vec![1, 2]);
    let (_, arrived) = arrival_zone(&n, &c, &m);
    assert_eq!(arrived.upper(1), Bound::le(0));
    assert_eq!(arrived.upper(2), Bound::le(0));
    assert_eq!(arrived.lower(3), Bound::le(-2));
}

#[test]
fn applying_disabled_move_is_an_error() {
    let n = parse_model(
        "agent A { clock x; init l0; loc l0 { invariant x <= 1; } loc l1 { } edge l0 -> l1 on a when x >= 3; }",
    )
    .unwrap();
    let c = initial_core(&n).unwrap();
    let m = candidate_moves(&n, &c.loc).remove(0);
    assert_eq!(
        apply_move(&n, &c, &m, &max_constants(&n, None)),
        Err(SemanticsError::DisabledMove("a".into()))
    );
}
