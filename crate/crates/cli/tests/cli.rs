use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lzkit(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lzkit"))
        .current_dir(dir)
        .env_remove("LZKIT_MEM_BUDGET")
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn bsc() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../channels/bsc01.toml")
        .to_string_lossy()
        .into_owned()
}

#[test]
fn raw_files_roundtrip() {
    let tmp = tempfile::tempdir().unwrap();
    let data: Vec<u8> = (0..20_000u32).map(|i| (i * i % 251) as u8).collect();
    fs::write(tmp.path().join("blob"), &data).unwrap();
    let c = json(&lzkit(tmp.path(), &["compress", "blob"]));
    assert_eq!(c["output"], "blob.lz78");
    assert_eq!(c["alphabet_size"], 256);
    let d = json(&lzkit(tmp.path(), &["decompress", "blob.lz78"]));
    assert_eq!(d["output"], "blob");
    assert_eq!(fs::read(tmp.path().join("blob")).unwrap(), data);
    fs::write(tmp.path().join("empty"), b"").unwrap();
    json(&lzkit(tmp.path(), &["compress", "empty", "-o", "e.lz78"]));
    json(&lzkit(tmp.path(), &["decompress", "e.lz78", "-o", "e.out"]));
    assert!(fs::read(tmp.path().join("e.out")).unwrap().is_empty());
}

#[test]
fn complexity_of_binary_ascii() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(
        tmp.path().join("x"),
        b"0100011011000001010011100101110111\n",
    )
    .unwrap();
    let out = lzkit(tmp.path(), &["complexity", "--binary-ascii", "x"]);
    let r = json(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["n"], 34);
    assert_eq!(r["c"], 14);
    let rho = r["rho_lz"].as_f64().unwrap();
    assert!((rho - 14.0 * 14f64.log2() / 34.0).abs() < 1e-12);
    let text = String::from_utf8(out.stdout).unwrap();
    let at = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    let order = [
        "schema_version",
        "command",
        "n",
        "alphabet_size",
        "c",
        "rho_lz",
    ]
    .map(at);
    assert!(order.windows(2).all(|w| w[0] < w[1]), "{text}");
}

#[test]
fn explicit_symbols_and_inferred_alphabet() {
    let tmp = tempfile::tempdir().unwrap();
    fs::write(tmp.path().join("dna"), b"acgtacgtaacc").unwrap();
    let r = json(&lzkit(
        tmp.path(),
        &["complexity", "--symbols", "acgtn", "dna"],
    ));
    assert_eq!(r["alphabet_size"], 5);
    let r = json(&lzkit(tmp.path(), &["complexity", "dna"]));
    assert_eq!(r["alphabet_size"], 4);
    let out = lzkit(tmp.path(), &["complexity", "--symbols", "ac", "dna"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn encryption_roundtrip_with_key_file() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(dir.join("m"), b"0110101110001010101111\n").unwrap();
    json(&lzkit(
        dir,
        &["compress", "--binary-ascii", "m", "-o", "m.lz78"],
    ));
    fs::write(dir.join("key"), [0xa5u8; 16]).unwrap();
    let e = json(&lzkit(
        dir,
        &["encrypt", "m.lz78", "-o", "c", "--key", "key"],
    ));
    assert_eq!(e["key_bits_consumed"], e["payload_bits"]);
    json(&lzkit(
        dir,
        &["encrypt", "c", "-o", "p", "--key", "key", "--decrypt"],
    ));
    assert_eq!(
        fs::read(dir.join("p")).unwrap(),
        fs::read(dir.join("m.lz78")).unwrap()
    );
    fs::write(dir.join("short"), [0u8; 1]).unwrap();
    let out = lzkit(dir, &["encrypt", "m.lz78", "-o", "c2", "--key", "short"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_uses_file_stems() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::create_dir(dir.join("corpus")).unwrap();
    fs::write(dir.join("corpus/zeros.txt"), "0".repeat(2000)).unwrap();
    fs::write(dir.join("corpus/mixed.txt"), "0110100110010110".repeat(125)).unwrap();
    fs::write(dir.join("q"), "0".repeat(300)).unwrap();
    let r = json(&lzkit(
        dir,
        &["classify", "--binary-ascii", "q", "--corpus", "corpus"],
    ));
    assert_eq!(r["label"], "zeros");
    assert_eq!(r["classes"], serde_json::json!(["mixed", "zeros"]));
    assert_eq!(r["scores"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    assert_eq!(
        lzkit(dir, &["complexity", "missing"]).status.code(),
        Some(2)
    );
    fs::write(dir.join("junk.lz78"), b"not a stream").unwrap();
    assert_eq!(
        lzkit(dir, &["decompress", "junk.lz78"]).status.code(),
        Some(2)
    );
    assert_eq!(lzkit(dir, &["frobnicate"]).status.code(), Some(2));
    fs::write(dir.join("x"), b"012").unwrap();
    assert_eq!(
        lzkit(dir, &["complexity", "--binary-ascii", "x"])
            .status
            .code(),
        Some(2)
    );
    let big = [
        "channel-sim",
        "--channel",
        &bsc(),
        "--n",
        "4096",
        "--M",
        "8192",
        "--trials",
        "1",
    ];
    let out = lzkit(dir, &big);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("16777216"));
    fs::write(dir.join("z"), "0".repeat(21)).unwrap();
    let rd = [
        "rd",
        "--binary-ascii",
        "--n",
        "21",
        "--file",
        "z",
        "--D",
        "0",
    ];
    assert_eq!(lzkit(dir, &rd).status.code(), Some(3));
    fs::write(dir.join("bad.toml"), "states = 1\ninputs = 2\n").unwrap();
    let sim = [
        "channel-sim",
        "--channel",
        "bad.toml",
        "--n",
        "8",
        "--M",
        "2",
        "--trials",
        "1",
    ];
    assert_eq!(lzkit(dir, &sim).status.code(), Some(2));
}

#[test]
fn budget_override() {
    let tmp = tempfile::tempdir().unwrap();
    let args = [
        "channel-sim",
        "--channel",
        &bsc(),
        "--n",
        "64",
        "--M",
        "64",
        "--trials",
        "2",
    ];
    let out = Command::new(env!("CARGO_BIN_EXE_lzkit"))
        .current_dir(tmp.path())
        .env("LZKIT_MEM_BUDGET", "1000")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_lzkit"))
        .current_dir(tmp.path())
        .env("LZKIT_MEM_BUDGET", "5000")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(json(&out)["budget"], 5000);
}

#[test]
fn inference_commands() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    fs::write(dir.join("alt"), "01".repeat(4096)).unwrap();
    let r = json(&lzkit(dir, &["test-random", "--binary-ascii", "alt"]));
    assert_eq!(r["decision"], "H1");
    assert_eq!(r["lambda"], 0.1);
    let r = json(&lzkit(
        dir,
        &["order-estimate", "--binary-ascii", "alt", "--k-max", "3"],
    ));
    assert!(r["order"].is_u64() || r["order"].is_null());
    let r = json(&lzkit(dir, &["predict", "--binary-ascii", "alt"]));
    assert_eq!(r["predictions"].as_str().unwrap().len(), 8192);
    let r = json(&lzkit(dir, &["gamble", "--binary-ascii", "alt"]));
    assert!(r["growth"].as_f64().unwrap() > 0.5);
}
