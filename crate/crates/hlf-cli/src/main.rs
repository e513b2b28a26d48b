//! `hlf`: exact computations on higher local fields from the command line.
//!
//! Exit codes: 0 success / verdict true, 1 input error, 2 property failure,
//! 3 classifier or membership false, 4 mode/net mismatch.

use std::collections::HashMap;
use std::process::ExitCode;

use hlf::json;
use hlf::{
    archimedean_seminorm, c_seminorm, classify, gauge_eval, min_plus_convolve, pair,
    reconstruct_handle, seminorm_eval, window_corroborate, Error, FieldShape, NetKind, NetSpec,
    Window,
};
use hlf_cli::config::SuiteConfig;
use hlf_cli::props;

const USAGE: &str = "\
usage: hlf <command> [options]

commands:
  classify   --net FILE --n N --r R --kind lattice|bounded|compactoid [--window W]
  seminorm   --net FILE --element FILE --mode padic|gauge|archimedean
  member     --net FILE --element FILE
  dual pair        --x FILE --y FILE
  dual polar       --net FILE [--out FILE]
  dual cseminorm   --element FILE --net FILE --n N --r R
  dual reconstruct --representer FILE --window W [--out FILE]
  convolve   --net1 FILE --net2 FILE --window W
  props      --config FILE [--only SUITE]

exit codes: 0 ok/true, 1 input error, 2 property failure, 3 verdict false,
4 mode mismatch";

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_PROPERTY: u8 = 2;
const EXIT_FALSE: u8 = 3;
const EXIT_MODE: u8 = 4;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

struct Flags(HashMap<String, String>);

impl Flags {
    fn parse(args: &[String]) -> Result<Flags, String> {
        let mut map = HashMap::new();
        let mut it = args.iter();
        while let Some(flag) = it.next() {
            let name = flag
                .strip_prefix("--")
                .ok_or(format!("expected a --flag, got {flag:?}"))?;
            let value = it.next().ok_or(format!("--{name} needs a value"))?;
            if map.insert(name.to_string(), value.clone()).is_some() {
                return Err(format!("--{name} given twice"));
            }
        }
        Ok(Flags(map))
    }

    fn take(&self, name: &str) -> Result<&str, String> {
        self.0
            .get(name)
            .map(String::as_str)
            .ok_or(format!("missing --{name}"))
    }

    fn take_opt(&self, name: &str) -> Option<&str> {
        self.0.get(name).map(String::as_str)
    }

    fn int(&self, name: &str) -> Result<i64, String> {
        self.take(name)?
            .parse()
            .map_err(|_| format!("--{name} must be an integer"))
    }

    fn usize(&self, name: &str) -> Result<usize, String> {
        self.take(name)?
            .parse()
            .map_err(|_| format!("--{name} must be a non-negative integer"))
    }
}

fn read_file(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
}

fn load_net(path: &str) -> Result<NetSpec, String> {
    let net = json::net_from_json(&read_file(path)?).map_err(|e| format!("{path}: {e}"))?;
    let defects = net.validate_partition();
    if let Some(first) = defects.first() {
        return Err(format!("{path}: invalid partition: {first}"));
    }
    Ok(net)
}

fn load_element(path: &str) -> Result<hlf::LaurentElement, String> {
    json::element_from_json(&read_file(path)?).map_err(|e| format!("{path}: {e}"))
}

fn shape_args(flags: &Flags) -> Result<FieldShape, String> {
    FieldShape::new(flags.usize("n")?, flags.usize("r")?).map_err(|e| e.to_string())
}

fn run(args: &[String]) -> Result<u8, String> {
    let Some(command) = args.first() else {
        eprintln!("{USAGE}");
        return Ok(EXIT_INPUT);
    };
    match command.as_str() {
        "classify" => cmd_classify(&Flags::parse(&args[1..])?),
        "seminorm" => cmd_seminorm(&Flags::parse(&args[1..])?),
        "member" => cmd_member(&Flags::parse(&args[1..])?),
        "dual" => {
            let Some(sub) = args.get(1) else {
                return Err("dual needs a subcommand: pair|polar|cseminorm|reconstruct".into());
            };
            let flags = Flags::parse(&args[2..])?;
            match sub.as_str() {
                "pair" => cmd_dual_pair(&flags),
                "polar" => cmd_dual_polar(&flags),
                "cseminorm" => cmd_dual_cseminorm(&flags),
                "reconstruct" => cmd_dual_reconstruct(&flags),
                other => Err(format!("unknown dual subcommand {other:?}")),
            }
        }
        "convolve" => cmd_convolve(&Flags::parse(&args[1..])?),
        "props" => cmd_props(&Flags::parse(&args[1..])?),
        "--help" | "-h" | "help" => {
            println!("{USAGE}");
            Ok(EXIT_OK)
        }
        other => Err(format!("unknown command {other:?}")),
    }
}

fn cmd_classify(flags: &Flags) -> Result<u8, String> {
    let net = load_net(flags.take("net")?)?;
    let shape = shape_args(flags)?;
    let kind = match flags.take("kind")? {
        "lattice" => NetKind::OpenLattice,
        "bounded" => NetKind::Bounded,
        "compactoid" => NetKind::Compactoid,
        other => return Err(format!("unknown kind {other:?}")),
    };
    let window = match flags.take_opt("window") {
        Some(w) => w.parse().map_err(|_| "--window must be an integer")?,
        None => 10,
    };
    if window < 1 {
        return Err("--window must be at least 1".into());
    }
    let verdict = classify(&net, &shape, kind).map_err(|e| e.to_string())?;
    println!("kind: {kind}");
    println!("shape: n={} r={}", shape.n(), shape.r());
    println!("verdict: {}", verdict.holds);
    if let Some(witness) = &verdict.witness {
        println!("witness: {witness}");
    }
    let corroboration =
        window_corroborate(&net, &shape, kind, window).map_err(|e| e.to_string())?;
    println!("window: {window}");
    println!("corroboration: {corroboration}");
    Ok(if verdict.holds { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_seminorm(flags: &Flags) -> Result<u8, String> {
    let element = load_element(flags.take("element")?)?;
    let mode = flags.take("mode")?;
    match mode {
        "padic" | "gauge" => {
            let net = load_net(flags.take("net")?)?;
            let result = if mode == "padic" {
                seminorm_eval(&net, &element)
            } else {
                gauge_eval(&net, &element)
            };
            match result {
                Ok(value) => {
                    println!("mode: {mode}");
                    println!("value: {value}");
                    println!("exponent: {}", value.exponent());
                    Ok(EXIT_OK)
                }
                Err(e @ Error::InvalidNetValues { .. }) => {
                    eprintln!("error: {e}");
                    Ok(EXIT_MODE)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        "archimedean" => {
            let rho =
                json::rho_from_json(&read_file(flags.take("net")?)?).map_err(|e| e.to_string())?;
            if let Some(first) = rho.validate_partition().first() {
                return Err(format!("scaling net: invalid partition: {first}"));
            }
            match archimedean_seminorm(&element, &rho) {
                Ok(value) => {
                    println!("mode: archimedean");
                    println!("value: {}/{}", value.numer(), value.denom());
                    Ok(EXIT_OK)
                }
                Err(e @ Error::NonpositiveRho { .. }) => {
                    eprintln!("error: {e}");
                    Ok(EXIT_MODE)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        other => Err(format!("unknown mode {other:?}")),
    }
}

fn cmd_member(flags: &Flags) -> Result<u8, String> {
    let net = load_net(flags.take("net")?)?;
    let element = load_element(flags.take("element")?)?;
    let member = element.in_net(&net).map_err(|e| e.to_string())?;
    println!("member: {member}");
    Ok(if member { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_dual_pair(flags: &Flags) -> Result<u8, String> {
    let x = load_element(flags.take("x")?)?;
    let y = load_element(flags.take("y")?)?;
    let value = pair(&x, &y).map_err(|e| e.to_string())?;
    println!("pair: {}/{}", value.numer(), value.denom());
    Ok(EXIT_OK)
}

fn cmd_dual_polar(flags: &Flags) -> Result<u8, String> {
    let net = load_net(flags.take("net")?)?;
    let text = json::net_to_json(&net.pseudo_polar());
    match flags.take_opt("out") {
        Some(path) => {
            std::fs::write(path, text + "\n").map_err(|e| format!("cannot write {path}: {e}"))?;
            println!("polar: written to {path}");
        }
        None => println!("{text}"),
    }
    Ok(EXIT_OK)
}

fn cmd_dual_cseminorm(flags: &Flags) -> Result<u8, String> {
    let element = load_element(flags.take("element")?)?;
    let net = load_net(flags.take("net")?)?;
    let shape = shape_args(flags)?;
    match c_seminorm(&element, &net, &shape) {
        Ok(result) => {
            println!("value: {}", result.value);
            println!("exponent: {}", result.value.exponent());
            println!("compactoid: {}", result.compactoid);
            Ok(EXIT_OK)
        }
        Err(e @ Error::InvalidNetValues { .. }) => {
            eprintln!("error: {e}");
            Ok(EXIT_MODE)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_dual_reconstruct(flags: &Flags) -> Result<u8, String> {
    let representer = load_element(flags.take("representer")?)?;
    let radius = flags.int("window")?;
    if radius < 1 {
        return Err("--window must be at least 1".into());
    }
    let window = Window::radius(representer.dim(), radius);
    let rebuilt =
        reconstruct_handle(&hlf::gamma(&representer), &window).map_err(|e| e.to_string())?;
    let text = json::element_to_json(&rebuilt);
    match flags.take_opt("out") {
        Some(path) => {
            std::fs::write(path, text + "\n").map_err(|e| format!("cannot write {path}: {e}"))?;
            println!("reconstructed: written to {path}");
        }
        None => println!("{text}"),
    }
    Ok(EXIT_OK)
}

fn cmd_convolve(flags: &Flags) -> Result<u8, String> {
    let net1 = load_net(flags.take("net1")?)?;
    let net2 = load_net(flags.take("net2")?)?;
    let radius = flags.int("window")?;
    if radius < 1 {
        return Err("--window must be at least 1".into());
    }
    let window = Window::radius(net1.dim(), radius);
    let table = min_plus_convolve(&net1, &net2, &window).map_err(|e| e.to_string())?;
    for (point, value) in table.iter() {
        let coords: Vec<String> = point.iter().map(i64::to_string).collect();
        println!("({}): {value}", coords.join(","));
    }
    Ok(EXIT_OK)
}

fn cmd_props(flags: &Flags) -> Result<u8, String> {
    let path = flags.take("config")?;
    let cfg = SuiteConfig::from_json(&read_file(path)?)?;
    let only = flags.take_opt("only");
    if let Some(name) = only {
        if !props::SUITE_NAMES.contains(&name) {
            return Err(format!("unknown suite {name:?}"));
        }
    }
    if let Some(target) = &cfg.sabotage {
        if !props::SUITE_NAMES.contains(&target.as_str()) {
            return Err(format!("config: sabotage names unknown suite {target:?}"));
        }
    }
    let (report, all_passed) = props::run_all(&cfg, path, only);
    print!("{report}");
    Ok(if all_passed { EXIT_OK } else { EXIT_PROPERTY })
}
