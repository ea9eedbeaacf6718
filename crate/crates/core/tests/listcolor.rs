mod common;

use common::*;
use flexicolor::list::{
    check_coloring, degree_choosable_coloring, precolor_and_extend, reduce_to_unique, satisfied_amount,
};
use flexicolor::{Error, Graph, ListAssignment, Rational, Request};

fn lists(v: Vec<Vec<u32>>) -> ListAssignment {
    ListAssignment::new(v).unwrap()
}

#[test]
fn satisfied_amounts() {
    let g = Graph::path(2);
    let l = ListAssignment::uniform(2, [1, 2]);
    assert_eq!(satisfied_amount(&g, &l, &[1, 2], &Request::empty()).unwrap(), Rational::from_integer(0));
    let r = Request::unweighted([(0, 1)]).unwrap();
    assert_eq!(satisfied_amount(&g, &l, &[1, 2], &r).unwrap(), Rational::from_integer(1));
}

#[test]
fn diamond_widespread_request_is_never_honored() {
    let g = diamond();
    // a1 {1,2} wants 2, a2 {1,2,3} wants 1, b1 {1,2,3} wants 1, b2 {1,3} wants 3
    let raw = vec![vec![1, 2], vec![1, 2, 3], vec![1, 2, 3], vec![1, 3]];
    let r = Request::unweighted([(0, 2), (1, 1), (2, 1), (3, 3)]).unwrap();
    let all = proper_colorings(&g, &raw);
    assert!(!all.is_empty());
    let l = lists(raw);
    for c in &all {
        assert_eq!(satisfied_amount(&g, &l, c, &r).unwrap(), Rational::from_integer(0));
    }
}

#[test]
fn reduce_keeps_heaviest() {
    let r = Request::weighted([(0, 1, q(5, 1)), (0, 2, q(1, 1)), (0, 3, q(1, 1))]).unwrap();
    let u = reduce_to_unique(&r);
    assert_eq!(u.entries().len(), 1);
    assert_eq!((u.entries()[0].color, u.entries()[0].weight), (1, q(5, 1)));
    assert!(u.total() >= r.total() / 3);

    let eq = Request::weighted([(0, 1, q(1, 1)), (0, 2, q(1, 1)), (0, 3, q(1, 1))]).unwrap();
    let u = reduce_to_unique(&eq);
    assert_eq!(u.entries()[0].color, 1);
    assert_eq!(u.total(), eq.total() / 3);

    let k2 = Request::weighted([(0, 1, q(2, 1)), (0, 2, q(1, 1)), (1, 1, q(1, 3)), (1, 3, q(1, 3)), (1, 2, q(1, 3))])
        .unwrap();
    let u = reduce_to_unique(&k2);
    for v in 0..2 {
        let side: Rational = k2.entries().iter().filter(|e| e.vertex == v).map(|e| e.weight).sum();
        let kept: Rational = u.entries().iter().filter(|e| e.vertex == v).map(|e| e.weight).sum();
        assert!(kept * 3 >= side);
    }
}

#[test]
fn degree_choosable_examples() {
    let k3 = Graph::complete(3);
    let c = degree_choosable_coloring(&k3, &ListAssignment::uniform(3, [1, 2, 3])).unwrap();
    let mut s = c.clone();
    s.sort();
    assert_eq!(s, vec![1, 2, 3]);

    let d = diamond();
    let raw = vec![vec![1, 2], vec![1, 2, 3], vec![1, 2, 3], vec![1, 2]];
    assert!(!proper_colorings(&d, &raw).is_empty());
    let l = lists(raw);
    check_coloring(&d, &l, &degree_choosable_coloring(&d, &l).unwrap()).unwrap();

    let k4 = Graph::complete(4);
    assert!(matches!(
        degree_choosable_coloring(&k4, &ListAssignment::uniform(4, [1, 2, 3])),
        Err(Error::Infeasible { .. })
    ));
}

#[test]
fn precoloring() {
    let g = Graph::path(2);
    let l = ListAssignment::uniform(2, [1, 2]);
    assert_eq!(precolor_and_extend(&g, &l, &[(0, 1)]).unwrap(), vec![1, 2]);
    assert!(matches!(precolor_and_extend(&g, &l, &[(0, 1), (1, 2)]), Err(Error::Precondition(_))));

    let b = joined_triangles();
    let l = ListAssignment::uniform(6, [1, 2, 3]);
    let c = precolor_and_extend(&b, &l, &[(0, 1)]).unwrap();
    assert_eq!(c[0], 1);
    assert!(proper_colorings(&b, l.as_slice()).contains(&c));
}
