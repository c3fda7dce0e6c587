use std::collections::BTreeMap;
use std::process::Command;

use k3aut::classify::*;
use k3aut::fibration::*;
use k3aut::poly::q;

use Kodaira::*;

fn at(rep: &[FiberReport]) -> BTreeMap<String, Vec<Kodaira>> {
    let mut m: BTreeMap<String, Vec<Kodaira>> = BTreeMap::new();
    for r in rep {
        m.entry(r.place.to_string()).or_default().push(r.kodaira);
    }
    m
}

fn analyse(id: &str, a: Option<i64>) -> (Specialized, Vec<FiberReport>) {
    let v = a.map(q);
    let s = family_model(id).unwrap().specialize(v.as_ref()).unwrap();
    let rep = fiber_analysis(&s.model).unwrap();
    (s, rep)
}

#[test]
fn order_22_case_b_models() {
    let (s, rep) = analyse("22-B1", None);
    assert!(euler_check(&rep, s.model.scale));
    let m = at(&rep);
    assert_eq!(m["t"], vec![IIStar]);
    assert_eq!(m["inf"], vec![III]);
    assert_eq!(fiber_configuration(&rep), vec![(I(1), 11), (III, 1), (IIStar, 1)]);

    let (s, rep) = analyse("22-B2", None);
    assert!(euler_check(&rep, s.model.scale));
    let m = at(&rep);
    assert_eq!(m["t"], vec![IV]);
    assert_eq!(m["inf"], vec![IIIStar]);
}

#[test]
fn order_22_degenerate_member() {
    // a^3 = -27/4, rescaled to rational coefficients
    let m = WeierstrassModel::parse("-3", "2*t^11 - 2", 2).unwrap();
    let fam = family_model("22").unwrap();
    assert!(!fam.is_generic(&m));
    let rep = fiber_analysis(&m).unwrap();
    assert!(euler_check(&rep, 2));
    let c = fiber_configuration(&rep);
    assert_eq!(c, vec![(I(1), 11), (I(11), 1), (II, 1)]);
    // I11 over t = 0 in this chart, II at infinity; after t -> 1/t the two swap
    assert_eq!(at(&rep)["inf"], vec![II]);
    assert!(rep.iter().any(|r| r.kodaira == I(11) && r.place.to_string() == "t"));
    let inv = fiber_analysis(&m.inverted()).unwrap();
    assert_eq!(at(&inv)["inf"], vec![I(11)]);
    assert_eq!(fiber_configuration(&inv), c);
}

#[test]
fn generic_flag_on_special_members() {
    for (id, a) in [("15b", 1), ("11a", 0), ("24", 1)] {
        let (s, _) = analyse(id, Some(a));
        assert!(!s.generic, "{id} a={a}");
    }
    for (id, a) in [("15b", 2), ("11a", 1), ("24", 2), ("16a", 1), ("16a", 2)] {
        let (s, rep) = analyse(id, Some(a));
        assert!(s.generic, "{id} a={a}");
        assert!(euler_check(&rep, 2));
    }
}

#[test]
fn both_16a_variants_agree() {
    let (_, body) = analyse("16a-body", Some(1));
    for a in [1, 2] {
        let (_, table) = analyse("16a", Some(a));
        assert_eq!(fiber_configuration(&table), fiber_configuration(&body));
    }
}

#[test]
fn remaining_multipliers() {
    let m = |id: &str| {
        let f = family_model(id).unwrap();
        f.check_action(&f.action.unwrap()).unwrap()
    };
    assert_eq!(m("15b").purely_nonsymplectic_order, 15);
    assert_eq!(m("30b").omega_multiplier, RootOfUnity::new(30, 1));
    assert_eq!(m("11a").purely_nonsymplectic_order, 11);
    assert_eq!(m("22").omega_multiplier, RootOfUnity::new(22, 13));
}

#[test]
fn order_15_eliminations() {
    let c = classify_order(15, &ClassifyOptions::default()).unwrap();
    let by: BTreeMap<&str, &Status> = c.rows.iter().map(|r| (r.label.as_str(), &r.status)).collect();
    for l in ["F1", "F2", "F5", "F6"] {
        assert!(
            matches!(by[l], Status::EliminatedArithmetic { reason: Violation::CurveBucket { .. } }),
            "{l}: {:?}",
            by[l]
        );
    }
    for l in ["F4", "F9"] {
        match by[l] {
            Status::EliminatedArithmetic { reason: Violation::GenusOrder { genus, order, .. } } => {
                assert_eq!((*genus, *order), (3, 5));
            }
            s => panic!("{l}: {s:?}"),
        }
    }
}

#[test]
fn order_30_flagged_rows_fall_arithmetically() {
    let c = classify_order(30, &ClassifyOptions::with_dn(2)).unwrap();
    let adm: Vec<&str> = c.rows.iter().filter(|r| r.status.is_admissible()).map(|r| r.label.as_str()).collect();
    assert_eq!(adm.len(), 2, "{adm:?}");
    for t in ["tab:30", "tab:30-1"] {
        let d = compare_with_reference(&c.rows, t).unwrap();
        assert!(d.missing.is_empty(), "{t}: {d:?}");
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_k3aut")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn cli_exit_codes() {
    let (code, out) = cli(&["--format", "csv", "dims", "22", "--fix", "d22=2"]);
    assert_eq!(code, 0);
    assert!(out.contains("2,0,1,1") || out.contains("(2,0,1,1)"), "{out}");
    assert_eq!(cli(&["classify", "22", "--diff", "tab22"]).0, 0);
    assert_eq!(cli(&["classify", "15", "--diff", "resumen"]).0, 1);
    assert_eq!(cli(&["fibration", "--family", "nope"]).0, 2);
    assert_eq!(cli(&["dims", "22", "--fix", "d7=1"]).0, 2);
    assert_eq!(cli(&["lattice", "H5"]).0, 3);
    assert_eq!(cli(&["no-such-command"]).0, 2);
}

#[test]
fn cli_json_is_parseable() {
    let (code, out) = cli(&["--format", "json", "chi", "30", "--d", "(2,0,1,0,0,0,1,1)"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v.is_object(), "{out}");
    let (code, out) = cli(&["--format", "json", "tables", "--id", "tabB"]);
    assert_eq!(code, 0);
    serde_json::from_str::<serde_json::Value>(&out).unwrap();
}
