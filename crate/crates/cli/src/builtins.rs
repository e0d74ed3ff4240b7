//! Short names for common algebras and bialgebras, used when a name is not
//! found in the workspace: `k`, `Mat2Q`, `Diag3`, `Trunc2`, `QZ2`, `Z2xZ2`.

use morita_core::algkit::{cyclic_group_table, product_group_table, FiniteAlgebra};
use morita_core::bgdkit::{ground_bialgebroid, group_bialgebra, Bialgebroid};
use morita_core::{Error, Field, Result, Scalar};

fn sized(s: &str, prefix: &str) -> Option<usize> {
    let rest = s.strip_prefix(prefix)?;
    let rest = rest.strip_suffix('Q').unwrap_or(rest);
    rest.parse().ok().filter(|n| *n > 0)
}

/// Cayley table for `Zn` or products like `Z2xZ3`, with an optional leading `Q`.
pub fn group_table(s: &str) -> Option<Vec<Vec<usize>>> {
    let s = s.strip_prefix('Q').unwrap_or(s);
    let mut table: Option<Vec<Vec<usize>>> = None;
    for part in s.split('x') {
        let n: usize = part.strip_prefix('Z')?.parse().ok().filter(|n| *n > 0)?;
        let c = cyclic_group_table(n);
        table = Some(match table {
            None => c,
            Some(t) => product_group_table(&t, &c),
        });
    }
    table
}

pub fn algebra(field: Field, s: &str) -> Option<Result<FiniteAlgebra>> {
    if s == "k" || s == "Q" {
        return Some(Ok(FiniteAlgebra::ground(field)));
    }
    if let Some(n) = sized(s, "Mat") {
        return Some(FiniteAlgebra::matrix(field, n));
    }
    if let Some(n) = sized(s, "Diag") {
        return Some(FiniteAlgebra::diagonal(field, n));
    }
    if let Some(n) = sized(s, "Trunc") {
        return Some(FiniteAlgebra::truncated_polynomial(field, n));
    }
    group_table(s).map(|t| FiniteAlgebra::group(field, &t))
}

pub fn bialgebra(field: Field, s: &str) -> Option<Result<Bialgebroid>> {
    if s == "k" || s == "Q" {
        return Some(Ok(ground_bialgebroid(field)));
    }
    group_table(s).map(|t| group_bialgebra(field, &t))
}

/// `χ((a,b),(c,d)) = (−1)^e` on `Z2×Z2`, where `e` is a `+`-separated sum of
/// products like `ad`; `1` is the trivial bicharacter.
pub fn klein_bicharacter(field: Field, expr: &str) -> Result<Vec<Vec<Scalar>>> {
    let terms: Vec<&str> = if expr.trim() == "1" { Vec::new() } else { expr.split('+').map(str::trim).collect() };
    let mut pairs = Vec::new();
    for t in terms {
        let cs: Vec<char> = t.chars().collect();
        match cs.as_slice() {
            [x @ ('a' | 'b'), y @ ('c' | 'd')] => pairs.push((*x == 'a', *y == 'c')),
            _ => return Err(Error::parse(format!("bad bicharacter term {t:?}, expected e.g. \"ad\""))),
        }
    }
    // element (a,b) sits at index 2a + b
    let coord = |g: usize, first: bool| if first { g / 2 } else { g % 2 };
    Ok((0..4)
        .map(|g| {
            (0..4)
                .map(|h| {
                    let e: usize = pairs.iter().map(|(x, y)| coord(g, *x) * coord(h, *y)).sum();
                    field.int(if e % 2 == 1 { -1 } else { 1 })
                })
                .collect()
        })
        .collect())
}
