use minembed::algebra::FieldTag;
use minembed::campaigns::{
    campaign_algebraic_identities, campaign_closed_form_match, campaign_fk, campaign_minimality, minimal_product,
    CampaignConfig, DiscrepancyLedger,
};
use minembed::closed_forms::{InequalityRecord, Relation};
use minembed::embedding::{EmbeddingSpec, ProjectiveSpec};

fn cp2() -> EmbeddingSpec {
    EmbeddingSpec::Projective(ProjectiveSpec::new(FieldTag::C, 2).unwrap())
}

#[test]
fn campaigns_are_deterministic_under_a_seed() {
    let a = campaign_closed_form_match(&CampaignConfig::for_target(cp2(), 16, 99)).unwrap();
    let b = campaign_closed_form_match(&CampaignConfig::for_target(cp2(), 16, 99)).unwrap();
    assert_eq!(a, b);
    let c = campaign_closed_form_match(&CampaignConfig::for_target(cp2(), 16, 100)).unwrap();
    assert_ne!(a.records, c.records);
}

#[test]
fn records_come_back_in_sample_order() {
    let l = campaign_minimality(&CampaignConfig::for_target(minimal_product(5, 2).unwrap(), 30, 1)).unwrap();
    let points: Vec<usize> = l
        .named("mean_curvature_norm")
        .map(|r| r.params.rsplit("point=").next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(points, (0..30).collect::<Vec<_>>());
}

#[test]
fn summary_agrees_with_records() {
    for l in [
        campaign_minimality(&CampaignConfig::for_target(cp2(), 10, 5)).unwrap(),
        campaign_fk(9, 4, 1000).unwrap(),
        campaign_algebraic_identities(&CampaignConfig::new(None, 20, 5)).unwrap(),
    ] {
        let pass = l.records.iter().filter(|r| r.pass).count();
        assert_eq!(l.summary.pass_count, pass);
        assert_eq!(l.summary.fail_count, l.records.len() - pass);
        assert_eq!(l.all_pass(), l.summary.fail_count == 0);
        assert_eq!(l.failures().count(), l.summary.fail_count);
    }
}

#[test]
fn worst_case_points_at_a_record() {
    let records = vec![
        InequalityRecord::new("a", "x=1", 1.0, 1.5, Relation::ApproxEq { tol: 1.0 }),
        InequalityRecord::new("b", "x=2", 1.0, 3.0, Relation::ApproxEq { tol: 1.0 }),
        InequalityRecord::new("c", "x=3", 0.5, 1.0, Relation::Lt),
    ];
    let l = DiscrepancyLedger::new("toy", records).unwrap();
    assert_eq!(l.summary.fail_count, 1);
    assert!(l.summary.worst_case.contains("x=2"));
    assert!(DiscrepancyLedger::new("empty", Vec::new()).is_err());
}

#[test]
fn campaigns_need_a_target() {
    assert!(campaign_minimality(&CampaignConfig::new(None, 10, 0)).is_err());
    assert!(campaign_closed_form_match(&CampaignConfig::new(None, 10, 0)).is_err());
    assert!(campaign_minimality(&CampaignConfig::for_target(cp2(), 0, 0)).is_err());
}

#[test]
fn product_match_passes_for_minimal_and_general_radii() {
    for spec in [minimal_product(6, 2).unwrap(), EmbeddingSpec::Product(minembed::ProductSphereSpec::new(6, 2, 0.3).unwrap())] {
        let l = campaign_closed_form_match(&CampaignConfig::for_target(spec, 12, 8)).unwrap();
        assert!(l.all_pass(), "{:?}", l.failures().next());
    }
}

#[test]
fn low_dimensional_projective_match_passes() {
    for field in FieldTag::ALL {
        for n in 1..=2 {
            let spec = EmbeddingSpec::Projective(ProjectiveSpec::new(field, n).unwrap());
            let l = campaign_closed_form_match(&CampaignConfig::for_target(spec, 12, 8)).unwrap();
            assert!(l.all_pass(), "{field} {n}: {:?}", l.failures().next());
        }
    }
}
