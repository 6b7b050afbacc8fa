use std::path::Path;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycenter")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

/// Value of `key=` in a `key=value` line.
fn field<'a>(line: &'a str, key: &str) -> &'a str {
    let pre = format!("{key}=");
    line.split_whitespace().find_map(|t| t.strip_prefix(pre.as_str())).unwrap_or_else(|| panic!("no {key} in {line}"))
}

#[test]
fn dist_examples() {
    let o = run(&["dist", &fixture("square.poly"), "0", "0", "1", "1"]);
    assert!(o.status.success());
    assert_eq!(field(&stdout(&o), "distance"), "1.414213562");
    let o = run(&["dist", &fixture("lshape.poly"), "0.5", "1.75", "1.75", "0.5"]);
    assert_eq!(stdout(&o).trim(), "distance=1.802775638 anchors=[(1,1)]");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["dist", "/no/such/file", "0", "0", "1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["dist", &fixture("square.poly"), "2", "2", "0", "0"]).status.code(), Some(3));
    assert_eq!(run(&["decide", &fixture("square.poly"), "0", "2", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.poly");
    std::fs::write(&bad, "4\n0 0\n1 1\n0 1\n1 0\n").unwrap();
    let o = run(&["onecenter", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    std::fs::write(&bad, "3\n0 0\n1 x\n0 1\n").unwrap();
    assert_eq!(run(&["onecenter", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn onecenter_examples() {
    let o = run(&["onecenter", &fixture("square.poly")]);
    let s = stdout(&o);
    assert_eq!(field(&s, "center"), "(0.500000000,0.500000000)");
    assert_eq!(field(&s, "radius"), "0.707106781");
    let o = run(&["onecenter", &fixture("lshape.poly"), "--oracle-grid", "128"]);
    let s = stdout(&o);
    assert_eq!(field(&s, "radius"), "1.414213562");
    assert!(field(&s, "oracle_delta").parse::<f64>().unwrap() <= 2e-5);
}

#[test]
fn twocenter_square_with_oracle_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("out.svg");
    let o = run(&["twocenter", &fixture("square.poly"), "--eps", "1e-7", "--oracle-samples", "256", "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success());
    let s = stdout(&o);
    let r: f64 = field(&s, "radius").parse().unwrap();
    assert!((r - 1.25f64.sqrt() / 2.0).abs() <= 1e-6);
    let oracle: f64 = field(&s, "oracle_radius").parse().unwrap();
    assert!(oracle >= r - 1e-6);
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("valid XML");
    let count = |tag: &str, class: &str| {
        doc.descendants().filter(|n| n.has_tag_name(tag) && n.attribute("class") == Some(class)).count()
    };
    assert_eq!(count("path", "disk"), 2);
    assert_eq!(count("circle", "center"), 2);
    // y is flipped: the polygon occupies negative y in the drawing.
    let ring = doc.descendants().find(|n| n.has_tag_name("polygon")).unwrap();
    assert!(ring.attribute("points").unwrap().contains("0,-1"));
}

#[test]
fn decide_examples() {
    let sq = fixture("square.poly");
    let yes = stdout(&run(&["decide", &sq, "0", "2", "0.60"]));
    assert_eq!(field(&yes, "answer"), "yes");
    field(&yes, "c1");
    field(&yes, "c2");
    assert_eq!(stdout(&run(&["decide", &sq, "0", "2", "0.50"])).trim(), "answer=no");
    let o = run(&["decide", &sq, "0", "0", "0.6"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a candidate"));
}

#[test]
fn candidates_sorted_and_bounded() {
    let s = stdout(&run(&["candidates", &fixture("square.poly")]));
    let lines: Vec<&str> = s.lines().collect();
    let last = lines.last().unwrap();
    let count: usize = field(last, "count").parse().unwrap();
    assert!(count <= 20);
    let pairs: Vec<(usize, usize)> = lines[..lines.len() - 1]
        .iter()
        .map(|l| (field(l, "i").parse().unwrap(), field(l, "j").parse().unwrap()))
        .collect();
    assert_eq!(pairs.len(), count);
    assert!(pairs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn render_examples() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("r.svg");
    let sq = fixture("square.poly");
    let s = stdout(&run(&["render", &sq, "--what", "fvd", "--svg", svg.to_str().unwrap()]));
    let inner = field(&s, "interior");
    assert!(inner.starts_with("[(0.5") && inner.contains(",0.5"), "{s}");
    roxmltree::Document::parse(&std::fs::read_to_string(&svg).unwrap()).unwrap();

    let s = stdout(&run(&["render", &sq, "--what", "intersection", "--r", "0.8", "--sites", "all", "--svg", svg.to_str().unwrap()]));
    assert_eq!(field(&s, "closed"), "true");
    assert_eq!(field(&s, "empty"), "false");
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let d = doc.descendants().find(|n| n.attribute("class") == Some("intersection")).unwrap();
    assert!(d.attribute("d").unwrap().ends_with('Z'));

    let o = run(&["render", &fixture("lshape.poly"), "--what", "disk", "--center", "0.5", "0.5", "--r", "1"]);
    assert!(o.status.success());
    assert_eq!(run(&["render", &sq, "--what", "disk", "--r", "1"]).status.code(), Some(2));
}

#[test]
fn path_and_disk() {
    let s = stdout(&run(&["path", &fixture("lshape.poly"), "0.5", "1.75", "1.75", "0.5"]));
    assert_eq!(field(&s, "anchors"), "[3]");
    assert_eq!(field(&s, "length"), "1.802775638");
    let s = stdout(&run(&["disk", &fixture("square.poly"), "0.5", "0.5", "0.6"]));
    assert_eq!(field(&s, "circular_arcs"), "4");
}

#[test]
fn random_polygons_follow_the_seed() {
    let a = stdout(&run(&["onecenter", "random:10", "--seed", "4"]));
    let b = stdout(&run(&["onecenter", "random:10", "--seed", "4"]));
    let c = stdout(&run(&["onecenter", "random:10", "--seed", "5"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
    let t1 = stdout(&run(&["twocenter", "random:14", "--seed", "2"]));
    let t4 = stdout(&run(&["twocenter", "random:14", "--seed", "2", "--threads", "4"]));
    assert_eq!(t1, t4);
}
