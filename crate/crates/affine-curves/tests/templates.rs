use affine_curves::invgen::generate_templates;
use affine_curves::invgen::templates::{canonicalize, i_poly};

type Terms<'a> = &'a [(i64, &'a [(usize, u32)])];

/// `(num, num_exp, den, den_exp)` as printed in the published table.
fn published(n: usize) -> Vec<(Terms<'static>, u32, Terms<'static>, u32)> {
    match n {
        2 => vec![(&[(1, &[(0, 1)]), (-1, &[(2, 2)])], 1, &[(6, &[(1, 1)]), (1, &[(2, 2)])], 1)],
        3 => vec![
            (&[(6, &[(0, 1)]), (-5, &[(3, 2)])], 1, &[(4, &[(2, 1)]), (1, &[(3, 2)])], 1),
            (&[(36, &[(1, 1)]), (6, &[(2, 1), (3, 1)]), (1, &[(3, 3)])], 2, &[(4, &[(2, 1)]), (1, &[(3, 2)])], 3),
        ],
        4 => vec![
            (&[(4, &[(0, 1)]), (-3, &[(4, 2)])], 1, &[(10, &[(3, 1)]), (3, &[(4, 2)])], 1),
            (&[(50, &[(2, 1)]), (15, &[(3, 1), (4, 1)]), (3, &[(4, 3)])], 2, &[(10, &[(3, 1)]), (3, &[(4, 2)])], 3),
            (
                &[(4000, &[(1, 1)]), (400, &[(2, 1), (4, 1)]), (60, &[(3, 1), (4, 2)]), (9, &[(4, 4)])],
                1,
                &[(10, &[(3, 1)]), (3, &[(4, 2)])],
                2,
            ),
        ],
        _ => unreachable!(),
    }
}

#[test]
fn generated_templates_match_published_table() {
    for n in 2..=4 {
        let got = generate_templates(n).unwrap();
        let want = published(n);
        assert_eq!(got.len(), want.len(), "n = {n}");
        for (t, (num, ne, den, de)) in got.iter().zip(want) {
            assert_eq!(t.num, canonicalize(&i_poly(num)), "n = {n}, F_{}", t.j);
            assert_eq!(t.den, canonicalize(&i_poly(den)), "n = {n}, F_{}", t.j);
            assert_eq!((t.num_exp, t.den_exp), (ne, de), "n = {n}, F_{}", t.j);
        }
    }
}

#[test]
fn denominators_share_one_base() {
    for n in 2..=8 {
        let ts = generate_templates(n).unwrap();
        assert!(ts.iter().all(|t| t.den == ts[0].den), "n = {n}");
    }
}
