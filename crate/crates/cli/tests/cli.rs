use std::process::{Command, Output};

use serde_json::Value;
use urs_core::decoders::{decode_cascade, DecodePolicy, Stage};
use urs_core::gf::Gf;
use urs_core::grs::ErasureSet;
use urs_core::hex::{decode_block, encode_block};
use urs_core::presets::preset;
use urs_core::reliability::{bb_failure_rate, run_campaign, run_exhaustive, FaultKind, FaultModel};

fn urs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_urs"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let o = urs(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn data_hex(k: usize, seed: u8) -> String {
    (0..k)
        .map(|i| format!("{:02x}", (i as u8).wrapping_mul(37).wrapping_add(seed)))
        .collect()
}

#[test]
fn construct_matches_library() {
    let v = ok_json(&["construct", "--preset", "ddr5-meta8"]);
    assert_eq!(
        v,
        serde_json::to_value(preset("ddr5-meta8").unwrap()).unwrap()
    );
    assert_eq!(v["shape"]["fibers"].as_array().unwrap().len(), 10);
    assert_eq!(v["shape"]["fibers"][0].as_array().unwrap().len(), 8);
    let toy = ok_json(&[
        "construct",
        "--field",
        "16",
        "--g",
        "subspace:0x1",
        "--n",
        "4",
        "--k",
        "2",
        "--a",
        "1",
    ]);
    assert_eq!(
        (
            toy["shape"]["big_n"].as_u64(),
            toy["shape"]["big_k"].as_u64()
        ),
        (Some(8), Some(5))
    );
    assert_eq!(
        toy,
        serde_json::to_value(preset("toy-gf16").unwrap()).unwrap()
    );
}

#[test]
fn construct_writes_file_and_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        urs(&["construct", "--preset", "toy-gf16-l4", "--out", p])
            .status
            .code(),
        Some(0)
    );
    let a = ok_json(&["analyze", "--code", p]);
    let b = ok_json(&["analyze", "--preset", "toy-gf16-l4"]);
    assert_eq!(a, b);
}

#[test]
fn configuration_errors_exit_2() {
    let o = urs(&[
        "construct",
        "--field",
        "16",
        "--g",
        "power:4",
        "--n",
        "3",
        "--k",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ℓ must divide q−1"));
    assert_eq!(
        urs(&["construct", "--preset", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        urs(&[
            "construct",
            "--field",
            "16",
            "--g",
            "subspace:0x1",
            "--n",
            "9",
            "--k",
            "2"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        urs(&["encode", "--preset", "toy-gf16", "--data", "12"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        urs(&["decode", "--preset", "toy-gf16", "--block", "zz"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(urs(&["frobnicate"]).status.code(), Some(2));
    let meta = urs(&[
        "decode",
        "--preset",
        "ddr5-meta8",
        "--metadata-bytes",
        "2",
        "--block",
        &"00".repeat(80),
    ]);
    assert_eq!(meta.status.code(), Some(2));
}

#[test]
fn io_errors_exit_4() {
    assert_eq!(
        urs(&["analyze", "--code", "/nonexistent/code.json"])
            .status
            .code(),
        Some(4)
    );
    let o = urs(&[
        "encode",
        "--preset",
        "toy-gf16",
        "--data",
        "@/nonexistent/data.hex",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn encode_decode_round_trip() {
    for enc in ["systematic", "recursive"] {
        let o = urs(&[
            "encode",
            "--preset",
            "ddr5-meta8",
            "--encoder",
            enc,
            "--data",
            &data_hex(65, 3),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let word = stdout(&o).trim().to_string();
        assert_eq!(word.len(), 160);
        let code = preset("ddr5-meta8").unwrap();
        let w = decode_block(&word, code.field()).unwrap();
        assert!(code.syndrome(&w).unwrap().is_zero());
        let v = ok_json(&["decode", "--preset", "ddr5-meta8", "--block", &word]);
        assert_eq!(v["status"], "no_error");
        assert_eq!(v["block"], word.as_str());
    }
}

fn corrupt(word: &str, positions: impl IntoIterator<Item = usize>) -> String {
    let mut bytes: Vec<u8> = (0..word.len() / 2)
        .map(|i| u8::from_str_radix(&word[2 * i..2 * i + 2], 16).unwrap())
        .collect();
    for p in positions {
        bytes[p] ^= 0x5a ^ (p as u8);
    }
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn device_failure_fast_chipkill() {
    let word = stdout(&urs(&[
        "encode",
        "--preset",
        "ddr5-meta8",
        "--data",
        &data_hex(65, 9),
    ]))
    .trim()
    .to_string();
    let bad = corrupt(&word, 24..32);
    let v = ok_json(&[
        "decode",
        "--preset",
        "ddr5-meta8",
        "--decoder",
        "fast-chipkill",
        "--block",
        &bad,
    ]);
    assert_eq!(v["status"], "corrected");
    assert_eq!(v["block"], word.as_str());
    assert_eq!(v["decoder"]["kind"], "fast_chipkill");
    // Golden: the adapter output equals the library outcome.
    let code = preset("ddr5-meta8").unwrap();
    let lib = decode_cascade(
        &code,
        &decode_block(&bad, code.field()).unwrap(),
        &DecodePolicy::single(Stage::FastChipkill),
        &ErasureSet::none(),
    )
    .unwrap();
    let mut expect = serde_json::to_value(&lib).unwrap();
    expect["block"] = Value::from(word.as_str());
    assert_eq!(v, expect);
}

#[test]
fn four_dq_independent() {
    let word = stdout(&urs(&[
        "encode",
        "--preset",
        "ddr5-meta0",
        "--data",
        &data_hex(64, 1),
    ]))
    .trim()
    .to_string();
    let bad = corrupt(&word, [0, 1, 18, 19, 42, 43, 70, 71]);
    let v = ok_json(&[
        "decode",
        "--preset",
        "ddr5-meta0",
        "--decoder",
        "independent",
        "--ell",
        "2",
        "--block",
        &bad,
    ]);
    assert_eq!(v["status"], "corrected");
    assert_eq!(v["block"], word.as_str());
}

#[test]
fn erased_column_and_uncorrectable() {
    let word = stdout(&urs(&[
        "encode",
        "--preset",
        "ddr5-meta0",
        "--data",
        &data_hex(64, 5),
    ]))
    .trim()
    .to_string();
    let bad = corrupt(&word, (8..16).chain([40, 41]));
    let v = ok_json(&[
        "decode",
        "--preset",
        "ddr5-meta0",
        "--decoder",
        "direct",
        "--erase-column",
        "1",
        "--block",
        &bad,
    ]);
    assert_eq!(v["status"], "corrected");
    assert_eq!(v["block"], word.as_str());
    let hopeless = corrupt(&word, (0..40).step_by(3));
    let o = urs(&[
        "decode",
        "--preset",
        "ddr5-meta0",
        "--decoder",
        "fast-chipkill",
        "--block",
        &hopeless,
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "uncorrectable");
    assert!(v["block"].is_null());
    let o = urs(&[
        "decode",
        "--preset",
        "ddr5-meta0",
        "--erase-column",
        "10",
        "--block",
        &word,
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unravel_matches_library() {
    let code = preset("ddr5-meta8").unwrap();
    let block: Vec<Gf> = (0..80).map(|i| Gf((i * 7 % 256) as u16)).collect();
    let hex = encode_block(&block, code.field());
    let v = ok_json(&[
        "unravel",
        "--preset",
        "ddr5-meta8",
        "--block",
        &hex,
        "--ell",
        "2",
    ]);
    let view = code.view(2).unwrap();
    let rows: Vec<String> = view
        .unravel(&block)
        .unwrap()
        .iter()
        .map(|r| encode_block(r, code.field()))
        .collect();
    assert_eq!(v["rows"], serde_json::to_value(rows).unwrap());
    assert_eq!(v["ell"], 2);
    let full = ok_json(&["unravel", "--preset", "ddr5-meta8", "--block", &hex]);
    assert_eq!(full["rows"].as_array().unwrap().len(), 8);
    assert_eq!(full["row_syndromes"][7].as_str().unwrap().len(), 2);
}

#[test]
fn simulate_matches_library_and_is_deterministic() {
    let args = [
        "simulate",
        "--preset",
        "ddr5-meta8",
        "--fault",
        "dq-burst:2:4",
        "--trials",
        "500",
        "--seed",
        "7",
    ];
    let a = urs(&args);
    let b = urs(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lib = run_campaign(
        &preset("ddr5-meta8").unwrap(),
        &DecodePolicy::default(),
        &FaultModel {
            kind: FaultKind::DqBurst { width: 2, count: 4 },
            seed: 7,
        },
        500,
    )
    .unwrap();
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v, serde_json::to_value(&lib).unwrap());
    let csv = stdout(&urs(&[&args[..], &["--format", "csv"]].concat()));
    assert_eq!(csv, lib.to_csv());
}

#[test]
fn simulate_exhaustive_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("campaign.json");
    std::fs::write(
        &cfg,
        r#"{"code": {"preset": "toy-gf16"}, "policy": {"stages": [{"kind": "fast_chipkill"}]},
            "fault": {"kind": "single_column", "seed": 0}, "exhaustive": true}"#,
    )
    .unwrap();
    let out = dir.path().join("report.json");
    let o = urs(&[
        "simulate",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["counts"]["due"], 60);
    assert_eq!(v["counts"]["sdc"], 0);
    let lib = run_exhaustive(
        &preset("toy-gf16").unwrap(),
        &DecodePolicy::single(Stage::FastChipkill),
        &FaultModel {
            kind: FaultKind::SingleColumn,
            seed: 0,
        },
    )
    .unwrap();
    assert_eq!(v, serde_json::to_value(&lib).unwrap());
    let missing = urs(&["simulate", "--config", "/nonexistent.json"]);
    assert_eq!(missing.status.code(), Some(4));
    let too_big = urs(&["simulate", "--preset", "ddr5-meta8", "--exhaustive"]);
    assert_eq!(too_big.status.code(), Some(2));
}

#[test]
fn analyze_matches_library() {
    for (name, k) in [("ddr5-meta8", 65), ("ddr5-meta16", 66)] {
        let v = ok_json(&["analyze", "--preset", name]);
        let due: f64 = bb_failure_rate(256, 80, k, 8).unwrap();
        assert_eq!(v["due_single_column"].as_f64().unwrap(), due);
        assert_eq!(v["failure_weight"], 80 - k + 1 - 8);
    }
    let csv = stdout(&urs(&[
        "analyze",
        "--preset",
        "ddr5-meta8",
        "--format",
        "csv",
    ]));
    assert!(csv.starts_with("quantity,value\n"));
    assert!(csv.lines().any(|l| l == "collaborative_radius_ell2,5"));
}

#[test]
fn help_documents_hex_format() {
    let o = urs(&["decode", "--help"]);
    assert!(stdout(&o).contains("column-major"));
}
