use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const LONG_SAMPLE: &[u8] = b"abedcababedccabedcedcababedcedcccabedcabedcedccababedc\
abedccccedccedccedcababedcabedcedccedcababedcabedccabedcab\
abedcedcccccedcabedcabedccccedcccabedcccedccabedccccabedcc\
ababedcabedcedccabedcababedced";

fn eahc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eahc"))
        .args(args)
        .env_remove("EAHC_MAX_ORDER")
        .output()
        .expect("eahc runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn encode_then_decode() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("sample.txt");
    let packed = dir.path().join("sample.eah");
    let restored = dir.path().join("restored.txt");
    fs::write(&input, LONG_SAMPLE).unwrap();

    let out = eahc(&["encode", "-i", path(&input), "-o", path(&packed)]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("|E|=235"), "{}", stdout(&out));

    let out = eahc(&["decode", "-i", path(&packed), "-o", path(&restored)]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(fs::read(&restored).unwrap(), LONG_SAMPLE);

    for n in ["2", "3"] {
        let out = eahc(&["encode", "-n", n, "-i", path(&input), "-o", path(&packed)]);
        assert!(out.status.success());
        assert!(
            eahc(&["decode", "-i", path(&packed), "-o", path(&restored)])
                .status
                .success()
        );
        assert_eq!(fs::read(&restored).unwrap(), LONG_SAMPLE);
    }
}

#[test]
fn encode_errors() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty");
    fs::write(&empty, b"").unwrap();
    let out = eahc(&[
        "encode",
        "-i",
        path(&empty),
        "-o",
        path(&dir.path().join("x")),
    ]);
    assert!(!out.status.success());

    let input = dir.path().join("in");
    fs::write(&input, b"abc").unwrap();
    let nowhere = dir.path().join("missing/dir/out");
    let out = eahc(&["encode", "-i", path(&input), "-o", path(&nowhere)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));

    let out = eahc(&[
        "encode",
        "-n",
        "4",
        "-i",
        path(&input),
        "-o",
        path(&dir.path().join("x")),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("EAHC_MAX_ORDER"));
    let out = Command::new(env!("CARGO_BIN_EXE_eahc"))
        .args([
            "encode",
            "-n",
            "4",
            "-i",
            path(&input),
            "-o",
            path(&dir.path().join("x")),
        ])
        .env("EAHC_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
}

#[test]
fn decode_errors() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in");
    let packed = dir.path().join("packed");
    fs::write(&input, b"abccdbbab").unwrap();
    assert!(eahc(&["encode", "-i", path(&input), "-o", path(&packed)])
        .status
        .success());
    let good = fs::read(&packed).unwrap();

    let mut bad = good.clone();
    bad[0] = b'X';
    fs::write(&packed, &bad).unwrap();
    let out = eahc(&[
        "decode",
        "-i",
        path(&packed),
        "-o",
        path(&dir.path().join("o")),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("magic"));

    fs::write(&packed, &good[..good.len() - 2]).unwrap();
    let out = eahc(&[
        "decode",
        "-i",
        path(&packed),
        "-o",
        path(&dir.path().join("o")),
    ]);
    assert!(!out.status.success());
}

#[test]
fn stats_rows() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("w.txt");
    let csv = dir.path().join("w.csv");
    fs::write(&input, LONG_SAMPLE).unwrap();
    let out = eahc(&[
        "stats",
        "-i",
        path(&input),
        "--orders",
        "1,2,3",
        "--csv",
        path(&csv),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 3);
    assert!(
        text.lines()
            .next()
            .unwrap()
            .contains("LEAHn=316 LH=462 LLZ=388"),
        "{text}"
    );

    let table = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "file,h,n,LEAHn,LH,LLZ,ratio");
    assert_eq!(lines[1], "w.txt,200,1,316,462,388,0.197500");
    assert_eq!(lines.len(), 4);

    let one = dir.path().join("one");
    fs::write(&one, b"x").unwrap();
    let out = eahc(&["stats", "-i", path(&one)]);
    assert!(out.status.success());
    assert!(
        stdout(&out).contains("h=1 n=1 LEAHn=1 LH=1 LLZ=0"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn graph_dot() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in");
    fs::write(&input, b"abccdbbab").unwrap();
    let first = eahc(&["graph", "-i", path(&input)]);
    assert!(first.status.success());
    let dot = stdout(&first);
    assert!(dot.starts_with("digraph G {"));
    assert!(dot.contains("\"a\" -> \"b\" [label=\"(2,0)\"];"), "{dot}");
    assert_eq!(stdout(&eahc(&["graph", "-i", path(&input)])), dot);

    let out_path = dir.path().join("g.dot");
    assert!(eahc(&["graph", "-i", path(&input), "-o", path(&out_path)])
        .status
        .success());
    assert_eq!(fs::read_to_string(&out_path).unwrap(), dot);

    fs::write(&input, b"ab").unwrap();
    let out = eahc(&["graph", "-n", "2", "-i", path(&input)]);
    assert_eq!(stdout(&out), "digraph G {\n}\n");
}

#[test]
fn bench_directory() {
    let dir = TempDir::new().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    let csv = dir.path().join("bench.csv");

    let out = eahc(&["bench", "-i", path(&corpus), "--csv", path(&csv)]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(
        fs::read_to_string(&csv).unwrap(),
        "file,h,n,LEAHn,LH,LLZ,ratio\n"
    );

    fs::write(corpus.join("b.txt"), LONG_SAMPLE).unwrap();
    fs::write(
        corpus.join("a.bin"),
        (0..=255u8).cycle().take(3000).collect::<Vec<_>>(),
    )
    .unwrap();
    fs::create_dir(corpus.join("nested")).unwrap();
    let out = eahc(&["bench", "-i", path(&corpus), "--orders", "2,1"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    let keys: Vec<(&str, &str)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut f = l.split(',');
            (f.next().unwrap(), f.nth(1).unwrap())
        })
        .collect();
    assert_eq!(
        keys,
        [
            ("a.bin", "1"),
            ("a.bin", "2"),
            ("b.txt", "1"),
            ("b.txt", "2")
        ]
    );
    assert!(text.contains("b.txt,200,1,316,462,388,0.197500"), "{text}");

    let stats = eahc(&[
        "stats",
        "-i",
        path(&corpus.join("b.txt")),
        "--csv",
        path(&csv),
    ]);
    assert!(stats.status.success());
    let row = fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .nth(1)
        .unwrap()
        .to_owned();
    assert!(text.lines().any(|l| l == row));

    let out = eahc(&["bench", "-i", path(&dir.path().join("absent"))]);
    assert!(!out.status.success());
}

#[cfg(unix)]
#[test]
fn bench_names_unreadable_file() {
    use std::os::unix::fs::PermissionsExt;
    let dir = TempDir::new().unwrap();
    let locked = dir.path().join("locked.txt");
    fs::write(&locked, b"abc").unwrap();
    fs::set_permissions(&locked, fs::Permissions::from_mode(0o000)).unwrap();
    if fs::read(&locked).is_ok() {
        // running as root: permissions are not enforced
        return;
    }
    let out = eahc(&["bench", "-i", path(dir.path())]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("locked.txt"));
}
