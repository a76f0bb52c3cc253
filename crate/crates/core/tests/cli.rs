use std::path::Path;
use std::process::{Command, Output};

fn algrec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algrec"))
        .args(args)
        .env_remove("ALGREC_THREADS")
        .output()
        .expect("spawn algrec")
}

fn scenario(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn smoke_walk_writes_ten_steps() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = algrec(&["--config", &scenario("smoke_z1.toml"), "--out", out, "walk"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("walk_seed1.trace")).unwrap();
    assert!(
        text.lines().next().unwrap().contains("config_hash="),
        "{text}"
    );
    let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(body.len(), 10, "{text}");
    assert!(dir.path().join("manifest.txt").exists());
}

#[test]
fn free_rank_one_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(
        &cfg,
        "[scenario]\nname = \"bad\"\ngroup = \"Free(1)\"\nsteps = 5\nseeds = [1]\n",
    )
    .unwrap();
    let o = algrec(&[
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
        "walk",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("d >= 2"));
}

#[test]
fn lattice_classify_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = algrec(&["--out", out, "lattice-classify", &scenario("quadrant.txt")]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("InHalfSpace (1,1)"));

    let o = algrec(&["--out", out, "lattice-classify", &scenario("triangle.txt")]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("Full"));

    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "# nothing\n\n").unwrap();
    let o = algrec(&["--out", out, "lattice-classify", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
