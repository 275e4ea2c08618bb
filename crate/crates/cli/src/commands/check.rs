use crate::args::{CommonArgs, Format};
use crate::output::{emit, Document, Failure, Outcome};
use crate::suite::{run_suite, SuiteConfig};

pub fn run(args: &CommonArgs) -> Outcome {
    if args.format == Format::Svg {
        return Err(Failure::Usage("check writes a json summary".into()));
    }
    let mut config = SuiteConfig { tol: args.tol, perturb: args.perturb, ..SuiteConfig::default() };
    if !args.mesh.is_empty() {
        if args.mesh.len() < 2 {
            return Err(Failure::Usage("check needs at least two mesh sizes".into()));
        }
        config.meshes = args.mesh.clone();
    }
    let report = run_suite(&config);
    emit(args.out.as_deref(), &Document::new("check", args.n, &report).to_json()?)?;
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {}::{} measured {:e} threshold {:e} ({})", c.module, c.name, c.measured, c.threshold, c.detail);
    }
    if report.numeric_failures() > 0 {
        Err(Failure::Numeric(anyhow::anyhow!("{} of {} checks failed", report.failed, report.checks.len())))
    } else if report.certification_failures() > 0 {
        Err(Failure::Certification("index certification failed".into()))
    } else {
        Ok(())
    }
}
