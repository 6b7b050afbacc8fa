//! `polycenter`: geodesic queries, 1-center and 2-center of simple polygons
//! from the command line.

mod fmt;
mod svg;

use clap::{Parser, Subcommand, ValueEnum};
use polycenter::disks::{disks_intersection, geodesic_disk};
use polycenter::gen::random_polygon;
use polycenter::onecenter::one_center;
use polycenter::oracle::{grid_one_center_in, sampled_two_center};
use polycenter::polygon::parse_polygon;
use polycenter::twocenter::{candidate_pairs, solve_with_threads, PairContext, PairKind, RadiusTable};
use polycenter::voronoi::farthest_voronoi;
use polycenter::{GeoError, Geodesy, Point, SimplePolygon};
use std::path::PathBuf;
use std::process::ExitCode;
use svg::{Prim, RenderScene};

#[derive(Parser, Debug)]
#[command(name = "polycenter", version, about = "Geodesic 1- and 2-center of simple polygons")]
struct Cli {
    /// Bisection tolerance for the 2-center radius.
    #[arg(long, global = true, default_value_t = 1e-7)]
    eps: f64,
    /// Worker threads for candidate pairs.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for `random:N` polygon files.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write an SVG rendering to this file.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Geodesic distance between two points.
    #[command(allow_negative_numbers = true)]
    Dist { file: String, x1: f64, y1: f64, x2: f64, y2: f64 },
    /// Shortest path between two points.
    #[command(allow_negative_numbers = true)]
    Path { file: String, x1: f64, y1: f64, x2: f64, y2: f64 },
    /// Geodesic disk around a point.
    #[command(allow_negative_numbers = true)]
    Disk { file: String, x: f64, y: f64, r: f64 },
    /// Geodesic 1-center.
    Onecenter {
        file: String,
        /// Compare against a brute-force grid of this resolution.
        #[arg(long)]
        oracle_grid: Option<usize>,
    },
    /// Geodesic 2-center.
    Twocenter {
        file: String,
        /// Compare against dense boundary sampling with this many samples.
        #[arg(long)]
        oracle_samples: Option<usize>,
    },
    /// Decide whether edge pair (i, j) admits a 2-cover of radius r.
    #[command(allow_negative_numbers = true)]
    Decide { file: String, i: usize, j: usize, r: f64 },
    /// List the candidate edge pairs.
    Candidates { file: String },
    /// Render a structure to SVG.
    #[command(allow_negative_numbers = true)]
    Render {
        file: String,
        #[arg(long, value_enum)]
        what: What,
        /// Radius for `disk` and `intersection`.
        #[arg(long)]
        r: Option<f64>,
        /// Disk center for `disk`.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        center: Option<Vec<f64>>,
        /// Comma-separated vertex indices or `all`.
        #[arg(long, default_value = "all")]
        sites: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum What {
    Fvd,
    Disk,
    Intersection,
}

/// Failure with its exit code: 2 for bad input, 3 for a valid input the
/// geometry rejects.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl From<GeoError> for CliError {
    fn from(e: GeoError) -> Self {
        match e {
            GeoError::PointOutside(..)
            | GeoError::CoincidentPoints
            | GeoError::DegeneratePartition
            | GeoError::ContextMismatch(..) => CliError::Domain(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type Out = Result<Vec<String>, CliError>;

fn load(file: &str, seed: u64) -> Result<SimplePolygon, CliError> {
    if let Some(n) = file.strip_prefix("random:") {
        let n: usize = n.parse().map_err(|_| CliError::Input(format!("bad vertex count in {file:?}")))?;
        if n < 3 {
            return Err(CliError::Input("random polygons need at least 3 vertices".into()));
        }
        return Ok(random_polygon(n, seed));
    }
    let text = std::fs::read_to_string(file).map_err(|e| CliError::Input(format!("{file}: {e}")))?;
    Ok(parse_polygon(&text)?)
}

fn inside(geo: &Geodesy, p: Point) -> Result<Point, CliError> {
    geo.check_inside(p)?;
    Ok(p)
}

fn radius(r: f64) -> Result<f64, CliError> {
    if r.is_finite() && r >= 0.0 {
        Ok(r)
    } else {
        Err(CliError::Input(format!("radius must be a non-negative number, got {r}")))
    }
}

fn write_svg(path: &Option<PathBuf>, scene: &RenderScene) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, scene.to_svg()).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn base_scene(poly: &SimplePolygon) -> RenderScene {
    let mut s = RenderScene::default();
    s.push("polygon", "black", Prim::Ring(poly.vertices().to_vec()));
    s
}

fn run(cli: &Cli) -> Out {
    match &cli.cmd {
        Command::Dist { file, x1, y1, x2, y2 } => {
            let geo = Geodesy::new(load(file, cli.seed)?);
            let a = inside(&geo, Point::new(*x1, *y1))?;
            let b = inside(&geo, Point::new(*x2, *y2))?;
            let path = geo.shortest_path(a, b)?;
            let anchors = fmt::list(path.anchors.iter(), |&k| fmt::short_point(geo.polygon().v(k)));
            Ok(vec![format!("distance={} anchors={anchors}", fmt::num(path.length))])
        }
        Command::Path { file, x1, y1, x2, y2 } => {
            let geo = Geodesy::new(load(file, cli.seed)?);
            let a = inside(&geo, Point::new(*x1, *y1))?;
            let b = inside(&geo, Point::new(*x2, *y2))?;
            let path = geo.shortest_path(a, b)?;
            let mut scene = base_scene(geo.polygon());
            scene.push("path", "blue", Prim::Polyline(path.points.clone()));
            write_svg(&cli.svg, &scene)?;
            Ok(vec![format!(
                "length={} anchors={} points={}",
                fmt::num(path.length),
                fmt::list(path.anchors.iter(), |k| k.to_string()),
                fmt::list(path.points.iter(), |&p| fmt::point(p))
            )])
        }
        Command::Disk { file, x, y, r } => {
            let geo = Geodesy::new(load(file, cli.seed)?);
            let c = inside(&geo, Point::new(*x, *y))?;
            let disk = geodesic_disk(&geo, c, radius(*r)?)?;
            let mut scene = base_scene(geo.polygon());
            scene.push("disk", "red", Prim::Outline(disk.arcs.clone()));
            scene.push("center", "red", Prim::Marker(c));
            write_svg(&cli.svg, &scene)?;
            Ok(vec![format!(
                "center={} radius={} arcs={} circular_arcs={}",
                fmt::point(c),
                fmt::num(disk.radius),
                disk.arcs.len(),
                disk.circular_arcs().count()
            )])
        }
        Command::Onecenter { file, oracle_grid } => {
            let geo = Geodesy::new(load(file, cli.seed)?);
            let res = one_center(&geo);
            let mut line = format!(
                "center={} radius={} witnesses={}",
                fmt::point(res.center),
                fmt::num(res.radius),
                fmt::list(res.witnesses.iter(), |k| k.to_string())
            );
            if let Some(g) = oracle_grid {
                if *g < 2 {
                    return Err(CliError::Input("--oracle-grid needs at least 2".into()));
                }
                let (_, v) = grid_one_center_in(&geo, *g);
                line.push_str(&format!(" oracle_delta={}", fmt::num((v - res.radius).abs())));
            }
            let mut scene = base_scene(geo.polygon());
            if cli.svg.is_some() {
                scene.push("disk", "red", Prim::Outline(geodesic_disk(&geo, res.center, res.radius)?.arcs));
            }
            scene.push("center", "red", Prim::Marker(res.center));
            write_svg(&cli.svg, &scene)?;
            Ok(vec![line])
        }
        Command::Twocenter { file, oracle_samples } => {
            if !(cli.eps > 0.0) {
                return Err(CliError::Input(format!("--eps must be positive, got {}", cli.eps)));
            }
            let geo = Geodesy::new(load(file, cli.seed)?);
            let res = solve_with_threads(&geo, cli.eps, cli.threads.max(1));
            let mut out = vec![format!(
                "c1={} c2={} radius={} alpha={} beta={} edge_pair=({},{}) configuration={}",
                fmt::point(res.c1),
                fmt::point(res.c2),
                fmt::num(res.radius),
                fmt::coord(res.partition.0),
                fmt::coord(res.partition.1),
                res.edge_pair.0,
                res.edge_pair.1,
                res.configuration
            )];
            if let Some(s) = oracle_samples {
                let s = (*s).max(4 * geo.n());
                let (o, _) = sampled_two_center(&geo, s);
                out.push(format!("oracle_radius={} oracle_samples={s}", fmt::num(o)));
            }
            if cli.svg.is_some() {
                let poly = geo.polygon();
                let mut scene = base_scene(poly);
                for c in [res.c1, res.c2] {
                    scene.push("disk", "red", Prim::Outline(geodesic_disk(&geo, c, res.radius)?.arcs));
                }
                let (a, b) = (poly.point_at(res.partition.0), poly.point_at(res.partition.1));
                scene.push("partition", "blue", Prim::Polyline(geo.shortest_path(a, b)?.points));
                scene.push("center", "red", Prim::Marker(res.c1));
                scene.push("center", "red", Prim::Marker(res.c2));
                scene.push("label", "black", Prim::Label(res.c1, "c1".into()));
                scene.push("label", "black", Prim::Label(res.c2, "c2".into()));
                write_svg(&cli.svg, &scene)?;
            }
            Ok(out)
        }
        Command::Decide { file, i, j, r } => {
            let r = radius(*r)?;
            let geo = Geodesy::new(load(file, cli.seed)?);
            let n = geo.n();
            if *i >= n || *j >= n {
                return Err(CliError::Input(format!("edge index out of range for n={n}")));
            }
            let table = RadiusTable::new(&geo);
            if !candidate_pairs(&table).iter().any(|p| p.i == *i && p.j == *j) {
                eprintln!("warning: ({i},{j}) is not a candidate pair");
            }
            let ctx = PairContext::new(&table, *i, *j)?;
            let out = ctx.decide(r);
            Ok(vec![match out.witness {
                Some(w) if out.answer => format!(
                    "answer=yes c1={} c2={} alpha={} beta={}",
                    fmt::point(w.c1),
                    fmt::point(w.c2),
                    fmt::coord(w.alpha),
                    fmt::coord(w.beta)
                ),
                _ => "answer=no".to_string(),
            }])
        }
        Command::Candidates { file } => {
            let geo = Geodesy::new(load(file, cli.seed)?);
            let table = RadiusTable::new(&geo);
            let pairs = candidate_pairs(&table);
            let mut out: Vec<String> = pairs
                .iter()
                .map(|p| {
                    let kind = match p.kind {
                        PairKind::Type1 => "type1",
                        PairKind::Type2 => "type2",
                    };
                    format!("i={} j={} kind={kind}", p.i, p.j)
                })
                .collect();
            out.push(format!("count={} n={}", pairs.len(), geo.n()));
            Ok(out)
        }
        Command::Render { file, what, r, center, sites } => render(cli, file, *what, *r, center.as_deref(), sites),
    }
}

fn parse_sites(spec: &str, n: usize) -> Result<Vec<usize>, CliError> {
    if spec == "all" {
        return Ok((0..n).collect());
    }
    let sites = spec
        .split(',')
        .map(|t| match t.trim().parse::<usize>() {
            Ok(k) if k < n => Ok(k),
            _ => Err(CliError::Input(format!("bad site {t:?} for n={n}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if sites.is_empty() {
        return Err(CliError::Input("empty site list".into()));
    }
    Ok(sites)
}

fn render(cli: &Cli, file: &str, what: What, r: Option<f64>, center: Option<&[f64]>, sites: &str) -> Out {
    let geo = Geodesy::new(load(file, cli.seed)?);
    let mut scene = base_scene(geo.polygon());
    let need_r = || r.ok_or_else(|| CliError::Input("--r is required".into())).and_then(radius);
    let line = match what {
        What::Fvd => {
            let sites = parse_sites(sites, geo.n())?;
            let fvd = farthest_voronoi(&geo, &sites);
            let inner: Vec<_> = fvd.vertices.iter().filter(|v| !v.on_boundary).collect();
            for v in &inner {
                scene.push("fvd-vertex", "green", Prim::Marker(v.point));
            }
            for c in &fvd.frontier {
                scene.push("fvd-skeleton", "green", Prim::Ring(c.1.to_vec()));
            }
            let mut out = format!("what=fvd sites={} cells={} vertices={}", sites.len(), fvd.cells.len(), fvd.vertices.len());
            out.push_str(&format!(" interior={}", fmt::list(inner.iter(), |v| fmt::point(v.point))));
            out
        }
        What::Disk => {
            let c = match center {
                Some([x, y]) => inside(&geo, Point::new(*x, *y))?,
                _ => return Err(CliError::Input("--center X Y is required".into())),
            };
            let disk = geodesic_disk(&geo, c, need_r()?)?;
            scene.push("disk", "red", Prim::Outline(disk.arcs.clone()));
            scene.push("center", "red", Prim::Marker(c));
            format!("what=disk arcs={} circular_arcs={}", disk.arcs.len(), disk.circular_arcs().count())
        }
        What::Intersection => {
            let sites = parse_sites(sites, geo.n())?;
            let inter = disks_intersection(&geo, &sites, need_r()?);
            let m = inter.arcs.len();
            let closed = m > 0 && (0..m).all(|k| inter.arcs[k].end.dist(inter.arcs[(k + 1) % m].start) < 1e-9);
            if m > 0 {
                scene.push("intersection", "purple", Prim::Outline(inter.arcs.clone()));
            }
            if let Some(p) = inter.point {
                scene.push("intersection", "purple", Prim::Marker(p));
            }
            format!(
                "what=intersection empty={} arcs={m} circular_arcs={} closed={closed} contiguous={}",
                inter.empty,
                inter.circular_arc_count(),
                inter.site_runs_contiguous()
            )
        }
    };
    write_svg(&cli.svg, &scene)?;
    Ok(vec![line])
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Domain(_) => 3,
            })
        }
    }
}
