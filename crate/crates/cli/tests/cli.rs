use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mcur_core::{fixtures, io, Chain1, CurvePiece, MetricComplex};
use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: TempDir::new().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.path(name);
        fs::write(&p, contents).unwrap();
        p
    }

    fn complex(&self, name: &str, cx: &MetricComplex) -> PathBuf {
        self.file(name, &io::write_complex(cx))
    }

    fn chain(&self, name: &str, cx: &MetricComplex, t: &Chain1) -> PathBuf {
        self.file(name, &io::write_chain(cx, t))
    }
}

fn mcur(args: &[&Path]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcur")).args(args).output().unwrap()
}

fn mcur_str(args: &[&str]) -> Output {
    mcur(&args.iter().map(Path::new).collect::<Vec<_>>())
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(s: &str) -> &Path {
    Path::new(s)
}

const ANNULUS_PBM: &str = "P1\n3 3\n1 1 1\n1 0 1\n1 1 1\n";

#[test]
fn flatnorm_of_triangle_cycle() {
    let ws = Workspace::new();
    let cx = fixtures::triangle();
    let c = ws.complex("tri.cx1", &cx);
    let t = ws.chain("cycle.ch1", &cx, &fixtures::triangle_cycle(&cx));
    let out = mcur(&[p("flatnorm"), p("--complex"), &c, p("--chain"), &t]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "F = 1"), "{text}");
    assert!(text.contains("M = 3\nN = 3\n"));
}

#[test]
fn decompose_figure_eight_writes_two_components() {
    let ws = Workspace::new();
    let cx = fixtures::figure_eight();
    let t =
        Chain1::from_named(&cx, [("ab", 1), ("bc", 1), ("ca", 1), ("cd", 1), ("de", 1), ("ef", 1), ("fc", 1)]).unwrap();
    let c = ws.complex("g.cx1", &cx);
    let ch = ws.chain("t.ch1", &cx, &t);
    let dec = ws.path("t.dec");
    let out = mcur(&[p("decompose"), p("--complex"), &c, p("--chain"), &ch, p("--mode"), p("exact"), p("--out"), &dec]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed = io::parse_decomposition(&cx, &fs::read_to_string(&dec).unwrap()).unwrap();
    assert_eq!(parsed.len(), 2);
    assert_eq!(parsed.parent(), &t);

    let checked = mcur(&[p("check"), p("--complex"), &c, p("--dec"), &dec]);
    assert_eq!(checked.status.code(), Some(0));
    assert!(stdout(&checked).starts_with("valid true\n"));
}

#[test]
fn planar_annulus_is_not_simple() {
    let ws = Workspace::new();
    let img = ws.file("annulus.pbm", ANNULUS_PBM);
    for method in ["via_boundary", "via_connectivity"] {
        let out = mcur(&[p("planar"), p("--image"), &img, p("--check"), p("simple"), p("--method"), p(method)]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).lines().any(|l| l == "simple: false"));
    }
    let out = mcur(&[p("planar"), p("--image"), &img, p("--check"), p("loop")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn planar_loop_of_a_pixel() {
    let ws = Workspace::new();
    let img = ws.file("one.pbm", "P1\n1 1\n1\n");
    let wlk = ws.path("loop.wlk");
    let svg = ws.path("loop.svg");
    let out = mcur(&[p("planar"), p("--image"), &img, p("--check"), p("loop"), p("--out"), &wlk, p("--svg"), &svg]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("loop (0,0) (1,0) (1,1) (0,1) (0,0)\n"), "{}", stdout(&out));
    assert!(fs::read_to_string(&wlk).unwrap().starts_with("walk\n"));
    assert!(fs::read_to_string(&svg).unwrap().contains("<svg"));
}

#[test]
fn curve_split_of_figure_eight_walk() {
    let ws = Workspace::new();
    let cx = fixtures::figure_eight();
    let c = ws.complex("g.cx1", &cx);
    let walk = CurvePiece::from_names(&cx, &["a", "b", "c", "d", "e", "f", "c", "a"]).unwrap();
    let w = ws.file("w.wlk", &io::write_walk(&cx, &walk));
    let out = mcur(&[p("curve"), p("--complex"), &c, p("--walk"), &w, p("--split")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("classification neither\nlength = 7\nmass = 7\n"), "{text}");
    assert!(text.contains("components 2\n"));
}

#[test]
fn fill_of_triangle_cycle() {
    let ws = Workspace::new();
    let cx = fixtures::triangle();
    let c = ws.complex("tri.cx1", &cx);
    let t = ws.chain("cycle.ch1", &cx, &fixtures::triangle_cycle(&cx));
    let s = ws.path("s.ch2");
    let out = mcur(&[p("fill"), p("--complex"), &c, p("--chain"), &t, p("--out"), &s]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("fill mass = 1\n"));
    assert!(fs::read_to_string(&s).unwrap().starts_with("chain 2\n"));

    let edge = ws.chain("edge.ch1", &cx, &Chain1::from_named(&cx, [("ab", 1)]).unwrap());
    let out = mcur(&[p("fill"), p("--complex"), &c, p("--chain"), &edge]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_one() {
    let ws = Workspace::new();
    let cx = fixtures::triangle();
    let c = ws.complex("tri.cx1", &cx);
    let bad = ws.file("bad.ch1", "chain 1\nzz 1\n");
    let out = mcur(&[p("flatnorm"), p("--complex"), &c, p("--chain"), &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));

    let missing = ws.path("missing.cx1");
    assert_eq!(mcur(&[p("flatnorm"), p("--complex"), &missing, p("--chain"), &bad]).status.code(), Some(1));
    assert_eq!(mcur_str(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(mcur_str(&["--help"]).status.code(), Some(0));
}

#[test]
fn precondition_violations_exit_two() {
    let ws = Workspace::new();
    let cx = fixtures::triangle();
    let c = ws.complex("tri.cx1", &cx);
    let t = ws.chain("cycle.ch1", &cx, &fixtures::triangle_cycle(&cx));
    for alpha in ["1", "2", "5/2"] {
        let out = mcur(&[
            p("decompose"),
            p("--complex"),
            &c,
            p("--chain"),
            &t,
            p("--method"),
            p("variational_oracle"),
            p("--alpha"),
            p(alpha),
        ]);
        assert_eq!(out.status.code(), Some(2), "alpha {alpha}");
    }
    let big = ws.chain("big.ch1", &cx, &Chain1::from_named(&cx, [("ab", 13)]).unwrap());
    let out = mcur(&[p("decompose"), p("--complex"), &c, p("--chain"), &big, p("--method"), p("variational_oracle")]);
    assert_eq!(out.status.code(), Some(2));

    // A walk through non-adjacent vertices is a malformed file, not a precondition.
    let hex = fixtures::hexagon_multigraph();
    let hc = ws.complex("hex.cx1", &hex);
    let w = ws.file("w.wlk", "walk\na\nc\n");
    assert_eq!(mcur(&[p("curve"), p("--complex"), &hc, p("--walk"), &w]).status.code(), Some(1));
}

#[test]
fn thread_cap_must_be_positive() {
    let out = Command::new(env!("CARGO_BIN_EXE_mcur"))
        .args(["planar", "--image", "/nonexistent.pbm"])
        .env("MCUR_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MCUR_THREADS"));
}

#[test]
fn report_is_deterministic() {
    let ws = Workspace::new();
    let cx = fixtures::figure_eight_with_tail();
    let c = ws.complex("g.cx1", &cx);
    let chains = ws.path("chains");
    fs::create_dir(&chains).unwrap();
    fs::write(
        chains.join("b.ch1"),
        io::write_chain(&cx, &Chain1::from_named(&cx, [("ab", -6), ("bc", -1), ("ag", 1)]).unwrap()),
    )
    .unwrap();
    fs::write(chains.join("a.ch1"), io::write_chain(&cx, &Chain1::from_named(&cx, [("ab", 1)]).unwrap())).unwrap();
    fs::write(chains.join("ignored.txt"), "not a chain").unwrap();

    let run = |threads: &str, seed: &str, svg: &Path| {
        let out = Command::new(env!("CARGO_BIN_EXE_mcur"))
            .args(["report", "--random", "25", "--seed", seed])
            .arg("--complex")
            .arg(&c)
            .arg("--dir")
            .arg(&chains)
            .arg("--svg")
            .arg(svg)
            .env("MCUR_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        (stdout(&out), fs::read_to_string(svg).unwrap())
    };
    let (one, svg_one) = run("1", "7", &ws.path("1.svg"));
    let (four, svg_four) = run("4", "7", &ws.path("4.svg"));
    assert_eq!(one, four);
    assert_eq!(svg_one, svg_four);
    let (other, _) = run("4", "8", &ws.path("8.svg"));
    assert_ne!(one, other);

    let lines: Vec<&str> = one.lines().collect();
    assert!(lines[1].starts_with("a\t1\t1\t"));
    assert!(lines[2].starts_with("b\t"));
    assert!(lines[3].starts_with("random0\t"));
    assert!(one.contains("chains 27\n"));
    assert!(one.ends_with("chain inequalities hold true\n"));
}
