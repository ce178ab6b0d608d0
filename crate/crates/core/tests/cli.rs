mod common;

use std::process::{Command, Output};

fn fineinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fineinv"))
        .args(args)
        .env_remove("FINEINV_SERIES_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn path_prints_unitary_paths_without_labels() {
    let o = fineinv(&["path", "468152937"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "UUUDHDUDD\n");
    let o = fineinv(&["path", "932857641"]);
    assert!(stdout(&o).contains('['), "{}", stdout(&o));
}

#[test]
fn path_draw_renders_ascii() {
    let o = fineinv(&["path", "--draw", "132"]);
    assert_eq!(stdout(&o), "HUD\n_/\\\n");
    let o = fineinv(&["path", "--draw", "3412"]);
    assert_eq!(stdout(&o), "UUDD\n /\\\n/  \\\n");
}

#[test]
fn unpath_inverts_path_on_the_corpus() {
    for n in 1..=6 {
        for v in common::all_involutions(n) {
            let p = common::to_perm(&v).to_compact();
            let path = stdout(&fineinv(&["path", &p]));
            let back = fineinv(&["unpath", path.trim()]);
            assert_eq!(stdout(&back).trim(), p);
        }
    }
}

#[test]
fn classify_prints_token_and_decomposition() {
    assert_eq!(stdout(&fineinv(&["classify", "42513"])), "simple\n");
    assert_eq!(
        stdout(&fineinv(&["classify", "628951734"])),
        "inflation_of_simple\n5274163[1, 1, 12, 1, 1, 1, 12]\n"
    );
    let o = fineinv(&["classify", "4123"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NotAnInvolution"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(fineinv(&[]).status.code(), Some(2));
    assert_eq!(fineinv(&["count", "--n", "x"]).status.code(), Some(2));
    let o = fineinv(&["series", "zeta"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("UnknownSeries"));
    let o = fineinv(&["count", "--n", "5", "--avoid", "12"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("BadPattern"));
    let o = fineinv(&["appendix", "--n", "11"]);
    assert!(stderr(&o).contains("OutOfRange"));
}

#[test]
fn count_formats() {
    let o = fineinv(&["count", "--n", "5", "--avoid", "4321", "--by", "class"]);
    assert_eq!(stdout(&o), "type12  17\ntype21  2\nsimple  2\ntotal   21\n");
    let o = fineinv(&[
        "count", "--n", "4", "--avoid", "4321", "--by", "fixed", "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "key,count\n0,2\n2,6\n4,1\n");
    let o = fineinv(&[
        "count",
        "--n",
        "8",
        "--avoid",
        "4321",
        "--by",
        "class-fixed",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 323);
}

#[test]
fn enumerate_formats_are_deterministic() {
    let a = fineinv(&[
        "enumerate",
        "--n",
        "5",
        "--avoid",
        "4321,132",
        "--format",
        "csv",
    ]);
    let b = fineinv(&[
        "enumerate",
        "--n",
        "5",
        "--avoid",
        "132,4321",
        "--format",
        "csv",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1 + 7);
    let o = fineinv(&[
        "enumerate",
        "--n",
        "3",
        "--avoid",
        "3412",
        "--format",
        "json",
    ]);
    assert_eq!(stdout(&o), "[\"123\",\"132\",\"213\",\"321\"]\n");
}

#[test]
fn series_order_comes_from_flag_or_environment() {
    let o = fineinv(&["series", "gamma_x", "--order", "8"]);
    assert_eq!(stdout(&o), "2*x^5 + 4*x^6 + 6*x^7 + 15*x^8\n");
    let o = Command::new(env!("CARGO_BIN_EXE_fineinv"))
        .args(["series", "I4321_132", "--format", "bfile"])
        .env("FINEINV_SERIES_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "0 0\n1 1\n2 2\n3 3\n4 5\n");
    let o = fineinv(&["series", "f_xy", "--order", "4"]);
    assert!(
        stdout(&o).contains("x^4: 2 + 6*y^2 + y^4"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn reconcile_prints_a_pass_table() {
    let o = fineinv(&["reconcile", "gamma_x", "--max", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<_> = stdout(&o).lines().skip(1).map(str::to_owned).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.ends_with("pass")));
    let o = fineinv(&["reconcile", "I4321_312", "--max", "9", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
}

#[test]
fn rc_and_simple_listing() {
    assert_eq!(stdout(&fineinv(&["rc", "628951734"])), "673951284\n");
    assert_eq!(
        stdout(&fineinv(&["appendix", "--n", "5"])),
        "35142\n42513\n"
    );
}
