//! Named models and CND functions used by the regression suite and the CLI.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::cnd::CndFunction;
use crate::error::Result;
use crate::models::{Clause, KernelModel, TwoSpaceGneiting, Variant};
use crate::spaces::{ProductSpace, Space};
use crate::special::{
    BernsteinFunction, CompleteBernsteinFunction, DiscreteMeasure, ExponentialMixture,
    StieltjesFunction,
};

/// A named fixture.
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named {
        name: name.into(),
        value,
    }
}

fn measure(atoms: &[(f64, f64)]) -> DiscreteMeasure {
    DiscreteMeasure::new(atoms.iter().copied()).expect("fixture measures are valid")
}

fn stieltjes(order: f64, c: f64, d: f64, atoms: &[(f64, f64)]) -> StieltjesFunction {
    StieltjesFunction::new(order, c, d, measure(atoms)).expect("fixture parameters are valid")
}

fn complete_bernstein(
    order: f64,
    a: f64,
    b: f64,
    atoms: &[(f64, f64)],
) -> CompleteBernsteinFunction {
    CompleteBernsteinFunction::new(order, a, b, measure(atoms))
        .expect("fixture parameters are valid")
}

fn sum(g: CndFunction, h: CndFunction) -> CndFunction {
    CndFunction::bernstein_compose(BernsteinFunction::identity(), g, h)
        .expect("atoms are nonnegative")
}

fn shifted(phi: CndFunction, c: f64) -> CndFunction {
    phi.shift(c).expect("fixture shifts are nonnegative")
}

/// `S² × [0, π/2] × R²`.
pub fn sphere_interval_plane() -> ProductSpace {
    ProductSpace::new(vec![
        Space::Sphere { dim: 2 },
        Space::Interval { length: FRAC_PI_2 },
        Space::Euclidean { dim: 2 },
    ])
    .expect("three factors")
}

/// `R × S² × S³`.
pub fn line_two_spheres() -> ProductSpace {
    ProductSpace::new(vec![
        Space::Euclidean { dim: 1 },
        Space::Sphere { dim: 2 },
        Space::Sphere { dim: 3 },
    ])
    .expect("three factors")
}

/// `h(u, v) = 1 + sin u + v^s` on `[0, π/2] × R^n`.
pub fn sine_power_h(s: f64) -> Result<CndFunction> {
    Ok(shifted(
        sum(CndFunction::sine(), CndFunction::power(s)?),
        1.0,
    ))
}

/// `g = 3 - cos t` on the sphere and `h = 1 + sin u + v^s`.
pub fn example_one(variant: Variant, f: StieltjesFunction, r: f64, s: f64) -> Result<KernelModel> {
    KernelModel::stieltjes(
        variant,
        f,
        CndFunction::three_minus_cos(),
        sine_power_h(s)?,
        r,
        sphere_interval_plane(),
    )
}

/// `g = c + t^s` on the line and `h = c + u + v` on two spheres.
pub fn example_two(f: StieltjesFunction, r: f64, c: f64, s: f64) -> Result<KernelModel> {
    KernelModel::stieltjes(
        Variant::Gr,
        f,
        CndFunction::power(s)?.shift(c)?,
        sum(CndFunction::linear(), CndFunction::linear()).shift(c)?,
        r,
        line_two_spheres(),
    )
}

/// Five `G_r` models covering `{D_f > 0, D_f = 0} × {r = λ, r > λ}`.
pub fn gr_pd_models() -> Vec<Named<KernelModel>> {
    let s = 1.5;
    let build = |name: &str, f, r| {
        named(
            name,
            example_one(Variant::Gr, f, r, s).expect("valid fixture"),
        )
    };
    vec![
        build(
            "singular_critical",
            stieltjes(1.0, 0.0, 1.0, &[(1.0, 1.0)]),
            1.0,
        ),
        build("singular_above", stieltjes(1.0, 0.0, 1.0, &[]), 2.0),
        build(
            "bounded_critical",
            stieltjes(0.5, 0.5, 0.0, &[(0.5, 1.0), (2.0, 1.0)]),
            0.5,
        ),
        build(
            "bounded_above",
            stieltjes(1.0, 0.0, 0.0, &[(1.0, 2.0)]),
            2.5,
        ),
        build("open_configuration", stieltjes(1.5, 1.0, 1.0, &[]), 1.5),
    ]
}

/// Models whose report is `SPD_guaranteed`, across every variant.
pub fn spd_models() -> Vec<Named<KernelModel>> {
    let mut out: Vec<Named<KernelModel>> = gr_pd_models()
        .into_iter()
        .filter(|m| m.name != "open_configuration")
        .map(|m| named(format!("G_r/{}", m.name), m.value))
        .collect();
    let space = sphere_interval_plane;
    let g = CndFunction::three_minus_cos;
    let h = || sine_power_h(1.0).expect("valid exponent");
    let mut push = |name: &str, model: Result<KernelModel>| {
        out.push(named(name, model.expect("valid fixture")));
    };
    push(
        "H_r/singular_above",
        KernelModel::stieltjes(
            Variant::Hr,
            stieltjes(1.0, 0.0, 0.5, &[(1.0, 1.0)]),
            g(),
            h(),
            1.5,
            space(),
        ),
    );
    push(
        "H_r/bounded",
        KernelModel::stieltjes(
            Variant::Hr,
            stieltjes(2.0, 0.2, 0.0, &[(0.5, 1.0)]),
            g(),
            h(),
            2.0,
            space(),
        ),
    );
    push(
        "I_r/singular_above",
        KernelModel::complete_bernstein(
            Variant::Ir,
            complete_bernstein(1.0, 0.0, 1.0, &[(1.0, 1.0)]),
            g(),
            h(),
            2.0,
            space(),
        ),
    );
    push(
        "I_r/critical",
        KernelModel::complete_bernstein(
            Variant::Ir,
            complete_bernstein(1.0, 0.0, 1.0, &[(2.0, 1.0)]),
            g(),
            h(),
            1.0,
            space(),
        ),
    );
    push(
        "J_r/bounded",
        KernelModel::complete_bernstein(
            Variant::Jr,
            complete_bernstein(0.5, 1.0, 0.0, &[(2.0, 1.0)]),
            g(),
            h(),
            1.0,
            space(),
        ),
    );
    push(
        "F_r/bounded",
        TwoSpaceGneiting::new(
            stieltjes(1.0, 0.0, 0.0, &[(1.0, 1.0)]),
            g(),
            shifted(CndFunction::sine(), 1.0),
            1.0,
        )
        .and_then(|m| {
            KernelModel::two_space(
                m,
                ProductSpace::new(vec![
                    Space::Sphere { dim: 2 },
                    Space::Interval { length: FRAC_PI_2 },
                ])?,
            )
        }),
    );
    push(
        "product/exp_power",
        KernelModel::product(
            ExponentialMixture::exp_decay().into(),
            StieltjesFunction::power(1.0).expect("valid order").into(),
            g(),
            h(),
            space(),
        ),
    );
    out
}

/// Models violating one named necessary clause.
pub fn violated_models() -> Vec<(Named<KernelModel>, Clause)> {
    let space = sphere_interval_plane;
    let h = || sine_power_h(1.5).expect("valid exponent");
    let build = |f: StieltjesFunction, g: CndFunction, h: CndFunction, r: f64| {
        KernelModel::stieltjes(Variant::Gr, f, g, h, r, space()).expect("valid fixture")
    };
    let power = || StieltjesFunction::power(1.0).expect("valid order");
    vec![
        (
            named(
                "g_constant",
                build(
                    power(),
                    CndFunction::constant(2.0).expect("c > 0"),
                    h(),
                    2.0,
                ),
            ),
            Clause::GNotStrict,
        ),
        (
            named(
                "h_ignores_v",
                build(
                    power(),
                    CndFunction::three_minus_cos(),
                    shifted(
                        sum(
                            CndFunction::sine(),
                            CndFunction::constant(0.0).expect("c = 0"),
                        ),
                        1.0,
                    ),
                    2.0,
                ),
            ),
            Clause::HNotStrict,
        ),
        (
            named(
                "constant_outer",
                build(
                    stieltjes(1.0, 1.5, 0.0, &[]),
                    CndFunction::three_minus_cos(),
                    h(),
                    1.0,
                ),
            ),
            Clause::ConstantOuter,
        ),
        (
            named(
                "pure_power_critical",
                build(power(), CndFunction::three_minus_cos(), h(), 1.0),
            ),
            Clause::PurePowerOuter,
        ),
        (
            named(
                "I_r/pure_power_critical",
                KernelModel::complete_bernstein(
                    Variant::Ir,
                    complete_bernstein(1.0, 0.0, 1.0, &[]),
                    CndFunction::three_minus_cos(),
                    h(),
                    1.0,
                    space(),
                )
                .expect("valid fixture"),
            ),
            Clause::PurePowerOuter,
        ),
    ]
}

/// Worked examples of the unresolved configuration, one per family.
pub fn open_case_models() -> Vec<Named<KernelModel>> {
    let space = sphere_interval_plane;
    let g = CndFunction::three_minus_cos;
    let h = || sine_power_h(2.0).expect("valid exponent");
    vec![
        named(
            "G_r",
            example_one(Variant::Gr, stieltjes(1.0, 1.0, 1.0, &[]), 1.0, 2.0).expect("valid"),
        ),
        named(
            "H_r",
            example_one(Variant::Hr, stieltjes(0.5, 2.0, 0.3, &[]), 0.5, 2.0).expect("valid"),
        ),
        named(
            "I_r",
            KernelModel::complete_bernstein(
                Variant::Ir,
                complete_bernstein(1.0, 1.0, 1.0, &[]),
                g(),
                h(),
                1.0,
                space(),
            )
            .expect("valid"),
        ),
        named(
            "J_r",
            KernelModel::complete_bernstein(
                Variant::Jr,
                complete_bernstein(2.0, 0.5, 3.0, &[]),
                g(),
                h(),
                2.0,
                space(),
            )
            .expect("valid"),
        ),
    ]
}

/// The worked examples: the sphere example for `s ∈ {1, 1.5, 2}` and the
/// line/two-spheres example, each with a singular part and `r > λ` and
/// with a bounded outer function.
pub fn worked_examples() -> Vec<Named<KernelModel>> {
    let singular = || StieltjesFunction::power(1.0).expect("valid order");
    let bounded = || stieltjes(1.0, 1.0, 0.0, &[(1.0, 2.0)]);
    let mut out = Vec::new();
    for s in [1.0, 1.5, 2.0] {
        out.push(named(
            format!("sphere/s={s}/singular"),
            example_one(Variant::Gr, singular(), 2.0, s).expect("valid"),
        ));
        out.push(named(
            format!("sphere/s={s}/bounded"),
            example_one(Variant::Gr, bounded(), 1.0, s).expect("valid"),
        ));
    }
    out.push(named(
        "line_spheres/singular",
        example_two(singular(), 2.0, 1.0, 1.5).expect("valid"),
    ));
    out.push(named(
        "line_spheres/bounded",
        example_two(bounded(), 2.0, 1.0, 1.5).expect("valid"),
    ));
    out
}

/// CND functions built with each combinator, with the product they live on.
pub fn cnd_functions() -> Vec<Named<(CndFunction, ProductSpace)>> {
    let product = |spaces: Vec<Space>| ProductSpace::new(spaces).expect("nonempty");
    let one_minus_exp = BernsteinFunction::new(0.0, 0.0, measure(&[(1.0, 1.0)])).expect("valid");
    let mut out = Vec::new();
    let mut push = |name: &str, phi: Result<CndFunction>, spaces: ProductSpace| {
        let phi = phi.expect("valid fixture");
        phi.check_spaces(spaces.factors())
            .expect("fixture atoms fit their spaces");
        out.push(named(name, (phi, spaces)));
    };

    push(
        "compose/one_minus_exp_of_geodesics",
        CndFunction::bernstein_compose(
            one_minus_exp.clone(),
            CndFunction::linear(),
            CndFunction::linear(),
        ),
        product(vec![Space::Sphere { dim: 2 }, Space::Circle]),
    );
    push(
        "compose/identity_square_plus_geodesic",
        CndFunction::bernstein_compose(
            BernsteinFunction::identity(),
            CndFunction::power(2.0).expect("s"),
            CndFunction::linear(),
        ),
        product(vec![Space::Euclidean { dim: 2 }, Space::Sphere { dim: 2 }]),
    );
    push(
        "compose/mixed_bernstein",
        CndFunction::bernstein_compose(
            BernsteinFunction::new(0.0, 1.0, measure(&[(0.5, 1.0), (3.0, 2.0)])).expect("valid"),
            CndFunction::three_minus_cos(),
            CndFunction::power(1.5).expect("s"),
        ),
        product(vec![Space::Sphere { dim: 2 }, Space::Euclidean { dim: 2 }]),
    );
    push(
        "compose/sine_power",
        sine_power_h(1.5),
        product(vec![
            Space::Interval { length: FRAC_PI_2 },
            Space::Euclidean { dim: 2 },
        ]),
    );
    push(
        "cross/linear_sine",
        CndFunction::euclidean_cross(
            BernsteinFunction::new(0.5, 1.0, DiscreteMeasure::zero()).expect("valid"),
            shifted(CndFunction::sine(), 1.0),
            1,
        ),
        product(vec![
            Space::Euclidean { dim: 1 },
            Space::Interval { length: FRAC_PI_2 },
        ]),
    );
    push(
        "cross/identity_unit",
        CndFunction::euclidean_cross(
            BernsteinFunction::identity(),
            CndFunction::constant(1.0).expect("c"),
            2,
        ),
        product(vec![Space::Euclidean { dim: 2 }, Space::Circle]),
    );
    push(
        "cross/jump_geodesic",
        CndFunction::euclidean_cross(
            BernsteinFunction::new(0.2, 0.0, measure(&[(1.0, 1.0)])).expect("valid"),
            shifted(CndFunction::linear(), 1.0),
            3,
        ),
        product(vec![Space::Euclidean { dim: 3 }, Space::Sphere { dim: 2 }]),
    );
    push(
        "complement/single_atom",
        TwoSpaceGneiting::new(
            stieltjes(1.0, 0.0, 0.0, &[(1.0, 1.0)]),
            CndFunction::linear(),
            shifted(CndFunction::linear(), 1.0),
            1.0,
        )
        .and_then(|m| CndFunction::bounded_complement(1.0, m)),
        product(vec![
            Space::Sphere { dim: 2 },
            Space::Interval { length: PI },
        ]),
    );
    push(
        "complement/headroom",
        TwoSpaceGneiting::new(
            stieltjes(0.5, 0.3, 0.0, &[(2.0, 1.0)]),
            CndFunction::power(2.0).expect("s"),
            shifted(CndFunction::sine(), 1.0),
            1.0,
        )
        .and_then(|m| {
            let peak = m.eval(&[0.0, 0.0])?;
            CndFunction::bounded_complement(1.1 * peak, m)
        }),
        product(vec![
            Space::Euclidean { dim: 1 },
            Space::Interval { length: FRAC_PI_2 },
        ]),
    );
    out
}
