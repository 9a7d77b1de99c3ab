use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hirzebruch::cli::log::is_line_subsequence;
use hirzebruch::cli::Generator;
use hirzebruch::DiagramSet;

const GOLDEN: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/setpb_3_9");

fn hirzebruch(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hirzebruch"))
        .current_dir(dir)
        .arg("--fixed-clock")
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_default()
}

#[test]
fn setpb_script_matches_golden_files() {
    for _ in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        fs::copy(Path::new(GOLDEN).join("pb.bat"), dir.path().join("pb.bat")).unwrap();
        let out = hirzebruch(dir.path(), &["run", "pb.bat"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        for name in ["diag", "log", "shortlog", "infolog"] {
            assert_eq!(read(dir.path(), name), read(Path::new(GOLDEN), name), "{name}");
        }
        let (log, short, info) = (
            read(dir.path(), "log"),
            read(dir.path(), "shortlog"),
            read(dir.path(), "infolog"),
        );
        assert!(is_line_subsequence(&short, &log));
        assert!(is_line_subsequence(&info, &short));
        assert!(read(dir.path(), "finitlog").is_empty());
    }
}

#[test]
fn golden_diag_file_is_setpb() {
    let set = DiagramSet::read(&Path::new(GOLDEN).join("diag")).unwrap();
    assert_eq!(set, hirzebruch::setgen::set_pb(3, 9).unwrap().set);
}

#[test]
fn emitted_scripts_replay_byte_identically() {
    let generators = [
        Generator::Bign { m: 4, n_big: 4 },
        Generator::Bign23 { m: 2, n_big: 2 },
        Generator::Bign23 { m: 3, n_big: 4 },
        Generator::Bignb { m: 3, n_big: 3, b: 6 },
        Generator::Nb { m: 3, n: 2, b_big: 6 },
        Generator::Nba {
            m: 3,
            n: 2,
            b: 5,
            a_big: 1,
        },
        Generator::Pb { m: 3, b_big: 9 },
        Generator::Pba { m: 3, b: 7, a_big: 7 },
    ];
    for g in generators {
        let direct = tempfile::tempdir().unwrap();
        let replay = tempfile::tempdir().unwrap();
        let mut args: Vec<String> = vec!["--emit-batch".into(), "gen.bat".into(), g.verb().into()];
        args.extend(g.params().iter().map(u32::to_string));
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = hirzebruch(direct.path(), &args);
        assert!(
            out.status.success(),
            "{}: {}",
            g.call(),
            String::from_utf8_lossy(&out.stderr)
        );
        fs::copy(direct.path().join("gen.bat"), replay.path().join("gen.bat")).unwrap();
        let out = hirzebruch(replay.path(), &["run", "gen.bat"]);
        assert!(
            out.status.success(),
            "{}: {}",
            g.call(),
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(
            fs::read(direct.path().join("diag")).unwrap(),
            fs::read(replay.path().join("diag")).unwrap(),
            "{}",
            g.call()
        );
        assert!(read(replay.path(), "infolog").contains(&g.call()));
    }
}

#[test]
fn check_block_on_setbign23() {
    let dir = tempfile::tempdir().unwrap();
    assert!(hirzebruch(dir.path(), &["setbign23", "2", "2"]).status.success());
    assert!(hirzebruch(dir.path(), &["check", "2", "diag", "6"])
        .status
        .success());
    let log = read(dir.path(), "log");
    assert_eq!(log.matches("det <> 0 det <> 0").count(), 25);
    assert!(log.contains("diag(3,4,4,5)  det <> 0 det <> 0\n"));
    assert!(log.contains("result: positive.\nnon-special: 25, special: 0\n job finished: 00:00:00:00\n"));
}

#[test]
fn ltails_block_format() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("seed"), "\n3\n").unwrap();
    assert!(hirzebruch(dir.path(), &["ltails", "2", "4", "seed", "out"])
        .status
        .success());
    let log = read(dir.path(), "log");
    assert!(log.contains(
        "ltails (all-h-D-admissible tails) 2 4\ntails loaded:\n\n3\n2 tails loaded.\ntails found:\n"
    ));
    assert!(log.contains("11 entries used, 5 tails found.\n"));
    assert_eq!(read(dir.path(), "out"), "\n1\n2\n3\n4\n");
}

#[test]
fn spec_goes_to_finitlog() {
    let dir = tempfile::tempdir().unwrap();
    let out = hirzebruch(dir.path(), &["spec", "6", "8", "2", "8", "15"]);
    assert!(out.status.success());
    let finit = read(dir.path(), "finitlog");
    assert!(finit.starts_with("\nspec 6 8 2 8 15\n"));
    assert!(finit.contains("L(8;2^15)"));
    assert!(finit.contains("result: -1-special."));
    assert!(is_line_subsequence(&finit, &read(dir.path(), "log")));
}

#[test]
fn errors_exit_nonzero_and_are_logged() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("bad.bat"),
        "basediag 1 1 3 bt\nfrobnicate 3\nrev bt never\n",
    )
    .unwrap();
    let out = hirzebruch(dir.path(), &["run", "bad.bat"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let log = read(dir.path(), "log");
    assert!(log.contains("frobnicate 3\nerror: unknown command"));
    assert!(!dir.path().join("never").exists());

    let out = hirzebruch(dir.path(), &["reduce", "3", "missing", "out"]);
    assert!(!out.status.success());

    // a seed whose reduction stays too long
    fs::write(dir.path().join("set"), "\n3\n5\n5,5\n").unwrap();
    let out = hirzebruch(dir.path(), &["atails", "3", "4", "2", "set", "out"]);
    assert!(!out.status.success());
    assert!(read(dir.path(), "log").contains("3,2,2 is too long"));
}

#[test]
fn empty_script_logs_only_the_preamble() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.bat"), "# nothing to do\n").unwrap();
    assert!(hirzebruch(dir.path(), &["run", "empty.bat"]).status.success());
    let log = read(dir.path(), "log");
    assert_eq!(log, read(dir.path(), "infolog"));
    assert!(log.contains("\nnothing to do\n"));
}
