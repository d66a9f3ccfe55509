mod common;

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use common::*;
use conedd::problem::{parse_rays, write_rays};
use conedd::{brute_force_filtered, EnumerationProblem};

fn conedd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conedd"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn arg(flag: &str, path: &Path) -> String {
    format!("--{flag}={}", path.display())
}

#[test]
fn enumerate_gieseking_matches_oracle() {
    let out = conedd(&["enumerate", &arg("input", &fixture("gieseking.cone"))]);
    assert_eq!(code(&out), 0);
    let rays = parse_rays(&String::from_utf8(out.stdout).unwrap(), 7).unwrap();
    assert_eq!(rays, coords(&brute_force_filtered(&gieseking()).unwrap()));
}

#[test]
fn unfiltered_then_external_filter_equals_filtered() {
    let dir = tempfile::tempdir().unwrap();
    let input = fixture("s2xs1.tri");
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(
        code(&conedd(&[
            "enumerate",
            &arg("input", &input),
            "--no-filter",
            &arg("output", &a)
        ])),
        0
    );
    assert_eq!(
        code(&conedd(&[
            "enumerate",
            &arg("input", &input),
            &arg("output", &b)
        ])),
        0
    );
    let p = triangulation("s2xs1.tri").standard_matching_equations();
    let all = parse_rays(&fs::read_to_string(a).unwrap(), p.dim()).unwrap();
    let filtered = parse_rays(&fs::read_to_string(b).unwrap(), p.dim()).unwrap();
    let kept: Vec<_> = all.iter().filter(|r| p.admissible(r)).cloned().collect();
    assert!(all.len() > kept.len());
    assert_eq!(kept, filtered);
}

#[test]
fn input_errors_exit_1() {
    assert_eq!(
        code(&conedd(&["enumerate", "--input=/nonexistent/file.cone"])),
        1
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cone");
    fs::write(&bad, "3 1\n1 2\n").unwrap();
    assert_eq!(code(&conedd(&["enumerate", &arg("input", &bad)])), 1);
    let tri = dir.path().join("bad.tri");
    fs::write(&tri, "1\n0:1023 - - -\n").unwrap();
    assert_eq!(code(&conedd(&["equations", &arg("input", &tri)])), 1);
    assert_eq!(
        code(&conedd(&[
            "enumerate",
            "--input=x.cone",
            "--order=sideways"
        ])),
        1
    );
    assert_eq!(code(&conedd(&["frobnicate"])), 1);
}

#[test]
fn equations_for_closed_and_bounded_triangulations() {
    let out = conedd(&["equations", &arg("input", &fixture("twisted_loop_9.tri"))]);
    assert_eq!(code(&out), 0);
    let p = EnumerationProblem::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(
        (p.dim(), p.equations().len(), p.groups().len()),
        (63, 54, 9)
    );

    let dir = tempfile::tempdir().unwrap();
    let lone = dir.path().join("lone.tri");
    fs::write(&lone, "1\n- - - -\n").unwrap();
    let out = conedd(&["equations", &arg("input", &lone)]);
    assert_eq!(code(&out), 0);
    let p = EnumerationProblem::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!((p.dim(), p.equations().len(), p.groups().len()), (7, 0, 1));

    // Two faces glued, two left on the boundary: 3 equations instead of 6.
    let half = dir.path().join("half.tri");
    fs::write(&half, "1\n0:1023 0:1023 - -\n").unwrap();
    let out = conedd(&["equations", &arg("input", &half)]);
    assert_eq!(code(&out), 0);
    let p = EnumerationProblem::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(p.equations().len(), 3);
}

#[test]
fn verify_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let problem = dir.path().join("loop.cone");
    let out = conedd(&["equations", &arg("input", &fixture("twisted_loop_9.tri"))]);
    fs::write(&problem, &out.stdout).unwrap();
    let rays = dir.path().join("loop.rays");
    for order in ["input", "position", "lexpos", "lexrand:5", "dynamic"] {
        for rep in ["full", "inner"] {
            let o = conedd(&[
                "enumerate",
                &arg("input", &problem),
                &format!("--order={order}"),
                &format!("--rep={rep}"),
                &arg("output", &rays),
            ]);
            assert_eq!(code(&o), 0);
            assert_eq!(
                code(&conedd(&[
                    "verify",
                    &arg("problem", &problem),
                    &arg("rays", &rays)
                ])),
                0
            );
        }
    }

    let p = EnumerationProblem::parse(&fs::read_to_string(&problem).unwrap()).unwrap();
    let mut good = parse_rays(&fs::read_to_string(&rays).unwrap(), p.dim()).unwrap();
    assert_eq!(good.len(), 77);

    // Sum of two rays: admissible only if compatible, never extreme.
    let (i, j) = (0..good.len())
        .flat_map(|i| (i + 1..good.len()).map(move |j| (i, j)))
        .find(|&(i, j)| {
            let s: Vec<_> = good[i].iter().zip(&good[j]).map(|(a, b)| a + b).collect();
            p.admissible(&s)
        })
        .unwrap();
    let sum = good[i].iter().zip(&good[j]).map(|(a, b)| a + b).collect();
    good.push(sum);
    let corrupt = dir.path().join("corrupt.rays");
    fs::write(&corrupt, write_rays(&good)).unwrap();
    let out = conedd(&["verify", &arg("problem", &problem), &arg("rays", &corrupt)]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("not extreme"));

    let mut bad = good[..1].to_vec();
    bad[0][0] += 1;
    fs::write(&corrupt, write_rays(&bad)).unwrap();
    assert_eq!(
        code(&conedd(&[
            "verify",
            &arg("problem", &problem),
            &arg("rays", &corrupt)
        ])),
        3
    );

    let empty = dir.path().join("empty.rays");
    fs::write(&empty, "# rays 0\n").unwrap();
    assert_eq!(
        code(&conedd(&[
            "verify",
            &arg("problem", &problem),
            &arg("rays", &empty)
        ])),
        0
    );
}

#[test]
fn oracle_subcommand() {
    let out = conedd(&["oracle", &arg("input", &fixture("gieseking.cone"))]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "# rays 1\n1 1 1 1 0 0 0\n"
    );
    let out = conedd(&[
        "oracle",
        &arg("input", &fixture("gieseking.cone")),
        "--no-filter",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "# rays 2\n0 0 0 0 1 1 1\n1 1 1 1 0 0 0\n"
    );
    // 63 coordinates is past the oracle's limit.
    assert_eq!(
        code(&conedd(&[
            "oracle",
            &arg("input", &fixture("twisted_loop_9.tri"))
        ])),
        1
    );
}

fn csv_rows(path: &Path) -> Vec<csv::StringRecord> {
    csv::Reader::from_path(path)
        .unwrap()
        .records()
        .map(|r| r.unwrap())
        .collect()
}

#[test]
fn bench_orderings_agree() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench.csv");
    let o = conedd(&[
        "bench",
        &arg("input", &fixture("twisted_loop_9.tri")),
        "--matrix=orderings",
        &arg("out", &out),
    ]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 5);
    let header = csv::Reader::from_path(&out)
        .unwrap()
        .headers()
        .unwrap()
        .clone();
    assert_eq!(header.iter().collect::<Vec<_>>(), conedd::cli::CSV_HEADER);
    let orders: Vec<&str> = rows.iter().map(|r| &r[2]).collect();
    assert_eq!(
        orders,
        ["input", "position", "lexpos", "lexrand:1", "dynamic"]
    );
    for r in &rows {
        assert_eq!(
            (&r[0], &r[1], &r[10], &r[12]),
            ("twisted_loop_9.tri", "standard", "77", "ok")
        );
    }
}

#[test]
fn bench_empty_matrix_writes_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bench.csv");
    let o = conedd(&[
        "bench",
        &arg("input", &fixture("gieseking.cone")),
        "--matrix=",
        &arg("out", &out),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        fs::read_to_string(&out).unwrap(),
        conedd::cli::CSV_HEADER.join(",") + "\n"
    );
    assert_eq!(
        code(&conedd(&[
            "bench",
            &arg("input", &fixture("gieseking.cone")),
            "--matrix=adj=sideways"
        ])),
        1
    );
}

#[test]
fn stats_row_matches_output() {
    let dir = tempfile::tempdir().unwrap();
    let (rays, stats) = (dir.path().join("r"), dir.path().join("s.csv"));
    let o = conedd(&[
        "enumerate",
        &arg("input", &fixture("twisted_loop_9.tri")),
        "--adjacency=alg",
        "--prefilter=basic",
        &arg("output", &rays),
        &arg("stats", &stats),
    ]);
    assert_eq!(code(&o), 0);
    let rows = csv_rows(&stats);
    assert_eq!(rows.len(), 1);
    let n = parse_rays(&fs::read_to_string(&rays).unwrap(), 63)
        .unwrap()
        .len();
    assert_eq!(n, 77);
    assert_eq!(rows[0][10].parse::<usize>().unwrap(), n);
    assert_eq!((&rows[0][3], &rows[0][6]), ("alg", "basic"));
}
