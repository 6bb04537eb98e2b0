mod common;

use proptest::prelude::*;

use common::props::*;
use knutson::field::FieldDescriptor;
use knutson::poly::{Ring, TermOrder};

fn unwrap(check: Check) -> Result<(), TestCaseError> {
    check.map_err(TestCaseError::fail)
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        let q = FieldDescriptor::RATIONALS;
        unwrap(field_axioms(q, &rational_element(q, a), &rational_element(q, b), &rational_element(q, c)))?;
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u64, 3, 101, 65_521, (1 << 61) - 1]), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let f = FieldDescriptor::prime_field(p).unwrap();
        unwrap(field_axioms(f, &f.from_i64(a), &f.from_i64(b), &f.from_i64(c)))?;
    }

    #[test]
    fn term_order_axioms(a in exps(4, 4), b in exps(4, 4), c in exps(4, 4)) {
        for order in orders() {
            unwrap(order_axioms(&order, &a, &b, &c))?;
        }
    }

    #[test]
    fn groebner_bases_recheck(gens in proptest::collection::vec(poly_terms(3), 1..4), p in prop::sample::select(vec![0u64, 7])) {
        let ring = Ring::new(FieldDescriptor::from_characteristic(p).unwrap(), 3);
        let ideal = common::props::ideal_from(ring, &gens);
        for order in [TermOrder::Lex, TermOrder::Grevlex] {
            unwrap(groebner_recheck(&ideal, &order))?;
        }
    }

    #[test]
    fn monomial_intersect_and_colon(a in monomial_ideal_gens(3), b in monomial_ideal_gens(3)) {
        unwrap(monomial_ops(Ring::new(FieldDescriptor::RATIONALS, 3), &a, &b))?;
    }

    #[test]
    fn stanley_reisner_dimension_and_hvector((n, gens) in squarefree_gens()) {
        unwrap(stanley_reisner(n, &gens))?;
    }
}
