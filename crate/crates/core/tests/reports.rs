use mclag::report::{verify, verify_all, ExternalRegistry, JobId, VerifyOptions};

#[test]
fn every_job_passes_at_default_genera() {
    let opts = VerifyOptions::default();
    for g in 3..=5 {
        for r in verify_all(g, &opts).unwrap() {
            assert!(r.pass, "{}", r.to_markdown());
        }
    }
}

#[test]
fn payload_is_deterministic() {
    let opts = VerifyOptions::default();
    for job in JobId::ALL {
        let a = verify(job, 3, &opts).unwrap();
        let b = verify(job, 3, &opts).unwrap();
        assert_eq!(a.payload_json(), b.payload_json(), "{job}");
        assert!(a.payload_json().get("metadata").is_none());
        assert!(a.to_json().get("metadata").is_some());
    }
}

#[test]
fn reports_without_externals_need_no_registry() {
    let full = VerifyOptions::default();
    let bare = VerifyOptions { registry: ExternalRegistry::empty(), ..VerifyOptions::default() };
    for g in [3, 4] {
        for job in JobId::ALL {
            let r = verify(job, g, &full).unwrap();
            if r.externals.is_empty() {
                assert_eq!(verify(job, g, &bare).unwrap().payload_json(), r.payload_json(), "{job} g={g}");
            } else {
                assert!(verify(job, g, &bare).is_err(), "{job} g={g} ran without its externals");
            }
        }
    }
}

#[test]
fn wrong_expectation_fails() {
    let mut opts = VerifyOptions::default();
    opts.expected
        .apply_overrides(
            r#"[{"job": "torelli-coinv-s2l", "genus": 3, "quantity": "H1(I_{g,1})_{S2L}",
                 "value": {"group": {"free_rank": 4, "invariant_factors": [2, 2]}}}]"#,
        )
        .unwrap();
    let r = verify(JobId::TorelliCoinvS2l, 3, &opts).unwrap();
    assert!(!r.pass);
    assert!(r.to_markdown().contains("FAIL"));
}
