use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::check::Check;
use crate::geometry::{chern_torsion, commutation_defect, gauduchon, HermitianModel};
use crate::poly::GaussPoly;
use crate::scalar::{format_rational, Complex64, GaussRational};
use crate::system::{Coeffs, Tamper};

use super::checks::{Context, Item};
use super::point::{random_lck, FormalError};
use super::table::DerivativeTable;

/// Items checked on every random draw, in report order.
pub fn formal_items(ctx: &Context<'_, GaussPoly>) -> Vec<Item<GaussPoly>> {
    let mut items = vec![ctx.family_item()];
    items.extend(ctx.norm_derivative_items());
    items.push(ctx.xyz_item());
    items.extend(ctx.uvw_items());
    items.extend(ctx.eta_second_items());
    items.extend(ctx.row_items());
    let corollary = ctx.eta_corollary_items();
    items.extend(corollary.into_iter().filter(|i| i.name.ends_with('4') || i.name.ends_with('5')));
    items
}

fn lift(x: &GaussRational) -> GaussPoly {
    GaussPoly::constant(x.clone())
}

struct Tally {
    name: String,
    failure: Option<String>,
}

/// Runs every formal item on `draws` seeded LCK samples of dimension `n`, with `s` symbolic.
pub fn verify_lemmas(n: usize, draws: usize, seed: u64, tamper: &Tamper) -> Result<Vec<Check>, FormalError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let genuine = Coeffs::new(GaussPoly::var());
    let stated = Coeffs::tampered(GaussPoly::var(), tamper);
    let mut tallies: Vec<Tally> = Vec::new();
    for draw in 0..draws {
        let point = random_lck(&mut rng, n)?.map(lift);
        let table = DerivativeTable::by_substitution(&point, &genuine);
        let ctx = Context::new(&point, &table, stated.clone(), tamper.flip_entry);
        for (slot, item) in formal_items(&ctx).into_iter().enumerate() {
            if tallies.len() <= slot {
                tallies.push(Tally { name: item.name.clone(), failure: None });
            }
            let tally = &mut tallies[slot];
            if tally.failure.is_none() {
                if let Some(v) = item.first_violation(0.0) {
                    let shown = item.diff.iter().find(|x| !num_traits::Zero::is_zero(*x)).map(|p| p.to_string()).unwrap_or_default();
                    tally.failure = Some(format!("draw {draw}, index {:?}: residual {shown}", v.index));
                }
            }
        }
    }
    Ok(tallies
        .into_iter()
        .map(|t| match t.failure {
            None => Check::pass(t.name, format!("exact on {draws} draws, n = {n}")),
            Some(why) => Check::fail(t.name, why),
        })
        .collect())
}

fn float_check(item: &Item<Complex64>, tol: f64) -> Check {
    match item.first_violation(tol) {
        None => Check::pass(item.name.clone(), format!("max residual {:.1e}", item.max_magnitude())),
        Some(v) => Check::fail(item.name.clone(), format!("index {:?}: |residual| = {:.3e}", v.index, v.magnitude)),
    }
}

/// Structural identities on a model where `∇^s` is genuinely Kähler-like,
/// with every derivative taken from the connection itself.
pub fn fixture_checks(model: &HermitianModel<Complex64>, s: &BigRational, tol: f64) -> Vec<Check> {
    let (point, table) = DerivativeTable::from_connection(model, s);
    let stated = Coeffs::new(Complex64::new(crate::scalar::rational_to_f64(s), 0.0));
    let ctx = Context::new(&point, &table, stated, None);
    let mut items = ctx.torsion_identity_items();
    items.extend(ctx.eta_corollary_items());
    items.extend(ctx.norm_derivative_items());
    items.push(ctx.xyz_item());
    items.extend(ctx.uvw_items());
    items.extend(ctx.eta_second_items());
    items.extend(ctx.row_items());
    items.push(ctx.row_vanishing_item());
    let mut out: Vec<Check> = items.iter().map(|i| float_check(i, tol)).collect();
    let conn = gauduchon(model, s);
    let (t, eta) = chern_torsion(model);
    let defect = commutation_defect(model, &conn, &t).max(commutation_defect(model, &conn, &eta));
    out.push(Check::new(
        "second-derivative commutation",
        defect <= tol,
        format!("max residual {defect:.1e} at s = {}", format_rational(s)),
    ));
    out
}




#[cfg(test)]
mod fixture_sensitivity {
    use super::*;
    use crate::geometry::test_models::hopf;
    use crate::scalar::rational;

    #[test]
    fn hopf_away_from_bismut_value_breaks_identities() {
        let checks = fixture_checks(&hopf(), &rational(1, 3), 1e-10);
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"torsion identity 1"), "{failed:?}");
        let row = checks.iter().find(|c| c.name == "system rows vanish").unwrap();
        assert!(!row.passed);
    }
}
