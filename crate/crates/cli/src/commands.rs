//! Implementations of the CLI verbs. Each one parses inputs, calls the
//! library, and renders JSON or a table; no computation happens here.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

use quantizer_core::abelian::{self, DualGroup};
use quantizer_core::actions::EquivariantAlgebra;
use quantizer_core::fourier;
use quantizer_core::group::{FiniteGroup, GroupAlgebraElement, GroupKind};
use quantizer_core::quantizer::{
    classify, extract_relations, symbol_name, Entry, FamilyVariant, Quantizer, QuantizerSpace,
};
use quantizer_core::repr::Dual;
use quantizer_core::{Error, Result};

use crate::fmt::{fmt_complex, fmt_sig, render_table};
use crate::json::*;
use crate::{Common, Format};

fn io_err(e: std::io::Error) -> Error {
    Error::Invalid(format!("io: {e}"))
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Invalid(format!("json: {e}"))
}

fn read_input<T: DeserializeOwned>(common: &Common) -> Result<T> {
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| Error::Invalid("missing --in file".into()))?;
    let body = std::fs::read_to_string(path).map_err(io_err)?;
    serde_json::from_str(&body).map_err(json_err)
}

fn read_file<T: DeserializeOwned>(path: &str) -> Result<T> {
    let body = std::fs::read_to_string(path).map_err(io_err)?;
    serde_json::from_str(&body).map_err(json_err)
}

fn emit(common: &Common, body: String) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, body).map_err(io_err),
        None => {
            print!("{body}");
            if !body.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(common: &Common, value: &T) -> Result<()> {
    let body = serde_json::to_string_pretty(value).map_err(json_err)?;
    emit(common, body)
}

fn group_of(common: &Common) -> Result<Arc<FiniteGroup>> {
    let spec = common
        .group
        .as_ref()
        .ok_or_else(|| Error::Invalid("missing --group".into()))?;
    GroupKind::parse(spec)?.build()
}

fn space_of(common: &Common) -> Result<QuantizerSpace> {
    QuantizerSpace::new(&group_of(common)?, common.effective_seed())
}

pub fn group_info(common: &Common) -> Result<()> {
    let group = group_of(common)?;
    match common.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Info {
                group: String,
                order: usize,
                identity: String,
                labels: Vec<String>,
                classes: Vec<Vec<String>>,
            }
            let info = Info {
                group: group.kind().to_string(),
                order: group.order(),
                identity: group.label(group.identity()).to_string(),
                labels: group.labels().to_vec(),
                classes: group
                    .conjugacy_classes()
                    .iter()
                    .map(|c| c.iter().map(|&g| group.label(g).to_string()).collect())
                    .collect(),
            };
            emit_json(common, &info)
        }
        Format::Table => {
            let mut out = format!(
                "group {}  order {}  classes {}\n",
                group.kind(),
                group.order(),
                group.conjugacy_classes().len()
            );
            let rows: Vec<Vec<String>> = group
                .conjugacy_classes()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    vec![
                        i.to_string(),
                        c.len().to_string(),
                        group.label(c[0]).to_string(),
                        c.iter().map(|&g| group.label(g)).collect::<Vec<_>>().join(" "),
                    ]
                })
                .collect();
            out.push_str(&render_table(
                &["class".into(), "size".into(), "representative".into(), "elements".into()],
                &rows,
            ));
            emit(common, out)
        }
    }
}

pub fn rep_table(common: &Common) -> Result<()> {
    let group = group_of(common)?;
    let dual = Dual::new(&group, common.effective_seed())?;
    let table = dual.character_table();
    match common.format {
        Format::Json => {
            let dump = RepJson {
                group: group.kind().to_string(),
                class_labels: table.class_labels.clone(),
                class_sizes: table.class_sizes.clone(),
                chars: table
                    .values
                    .iter()
                    .map(|row| row.iter().map(|z| to_cpx(*z)).collect())
                    .collect(),
                cg: Default::default(),
            };
            emit_json(common, &dump)
        }
        Format::Table => {
            let mut header = vec!["irrep".into(), "dim".into()];
            for (l, s) in table.class_labels.iter().zip(table.class_sizes.iter()) {
                header.push(format!("{l} (x{s})"));
            }
            let rows: Vec<Vec<String>> = dual
                .irreps()
                .iter()
                .map(|irr| {
                    let mut row = vec![format!("E{}", irr.label), irr.dim.to_string()];
                    for v in &table.values[irr.label] {
                        row.push(fmt_complex(*v));
                    }
                    row
                })
                .collect();
            emit(common, render_table(&header, &rows))
        }
    }
}

pub fn rep_cg(common: &Common) -> Result<()> {
    let group = group_of(common)?;
    let dual = Dual::new(&group, common.effective_seed())?;
    let table = dual.character_table();
    let mut cg = std::collections::BTreeMap::new();
    for a in 0..dual.len() {
        for b in 0..dual.len() {
            let mut inner = std::collections::BTreeMap::new();
            for (g, &c) in dual.clebsch_gordan(a, b).iter().enumerate() {
                if c > 0 {
                    inner.insert(g.to_string(), c);
                }
            }
            cg.insert(format!("({a},{b})"), inner);
        }
    }
    let dump = RepJson {
        group: group.kind().to_string(),
        class_labels: table.class_labels.clone(),
        class_sizes: table.class_sizes.clone(),
        chars: table
            .values
            .iter()
            .map(|row| row.iter().map(|z| to_cpx(*z)).collect())
            .collect(),
        cg,
    };
    match common.format {
        Format::Json => emit_json(common, &dump),
        Format::Table => {
            let mut header = vec!["(x)".to_string()];
            for b in 0..dual.len() {
                header.push(format!("E{b}"));
            }
            let rows: Vec<Vec<String>> = (0..dual.len())
                .map(|a| {
                    let mut row = vec![format!("E{a}")];
                    for b in 0..dual.len() {
                        let parts: Vec<String> = dual
                            .clebsch_gordan(a, b)
                            .iter()
                            .enumerate()
                            .filter(|(_, &c)| c > 0)
                            .map(|(g, &c)| {
                                if c == 1 {
                                    format!("E{g}")
                                } else {
                                    format!("{c}E{g}")
                                }
                            })
                            .collect();
                        row.push(parts.join("+"));
                    }
                    row
                })
                .collect();
            emit(common, render_table(&header, &rows))
        }
    }
}

pub fn fourier_transform(common: &Common, pair: bool) -> Result<()> {
    let group = group_of(common)?;
    let dual = Dual::new(&group, common.effective_seed())?;
    let file: ElementJson = read_input(common)?;
    let mut blocks = std::collections::BTreeMap::new();
    if pair {
        let square = FiniteGroup::product(&group, &group)?;
        let elem = file.resolve(&square)?;
        let image = fourier::pair_forward(&dual, &elem)?;
        for (a, row) in image.blocks.iter().enumerate() {
            for (b, m) in row.iter().enumerate() {
                blocks.insert(format!("{a},{b}"), matrix_to_json(m));
            }
        }
    } else {
        let elem = file.resolve(&group)?;
        let image = fourier::forward(&dual, &elem)?;
        for (a, m) in image.blocks.iter().enumerate() {
            blocks.insert(a.to_string(), matrix_to_json(m));
        }
    }
    emit_json(common, &FourierJson { blocks })
}

pub fn fourier_roundtrip(common: &Common, pair: bool, count: usize) -> Result<()> {
    let group = group_of(common)?;
    let dual = Dual::new(&group, common.effective_seed())?;
    let mut rng = ChaCha8Rng::seed_from_u64(common.effective_seed().wrapping_add(1));
    let mut worst = 0.0f64;
    if pair {
        let square = FiniteGroup::product(&group, &group)?;
        for _ in 0..count {
            let f = random_element(&square, &mut rng);
            let image = fourier::pair_forward(&dual, &f)?;
            let back = fourier::pair_inverse(&dual, &square, &image)?;
            worst = worst.max(back.diff_norm(&f));
        }
    } else {
        for _ in 0..count {
            let f = random_element(&group, &mut rng);
            let image = fourier::forward(&dual, &f)?;
            let back = fourier::inverse(&dual, &image)?;
            worst = worst.max(back.diff_norm(&f));
        }
    }
    let domain = if pair { "C[GxG]" } else { "C[G]" };
    emit(
        common,
        format!(
            "fourier roundtrip on {count} random elements of {domain} for {}: max residual {}\n",
            group.kind(),
            fmt_sig(worst)
        ),
    )?;
    if worst < common.tolerance {
        Ok(())
    } else {
        Err(Error::Numerical {
            context: "fourier roundtrip".into(),
            residual: worst,
            tolerance: common.tolerance,
        })
    }
}

fn random_element(group: &Arc<FiniteGroup>, rng: &mut ChaCha8Rng) -> GroupAlgebraElement {
    GroupAlgebraElement::from_coeffs(
        group,
        (0..group.order())
            .map(|_| Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0))
            .collect(),
    )
    .expect("coefficient count matches")
}

fn load_quantizer(common: &Common, space: &QuantizerSpace) -> Result<Quantizer> {
    let file: ElementJson = read_input(common)?;
    let elem = file.resolve(space.square())?;
    Ok(Quantizer::new(elem))
}

pub fn quantizer_verify(common: &Common) -> Result<()> {
    let space = space_of(common)?;
    let q = load_quantizer(common, &space)?;
    let report = space.check_conditions(&q)?;
    let accepted = report.accepted(common.tolerance);
    let verdict = if accepted { "accepted" } else { "rejected" };
    match common.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Verify {
                coherence_residual: f64,
                naturality_residual: f64,
                normalization_residual: f64,
                tolerance: f64,
                accepted: bool,
            }
            emit_json(
                common,
                &Verify {
                    coherence_residual: report.coherence,
                    naturality_residual: report.naturality,
                    normalization_residual: report.normalization,
                    tolerance: common.tolerance,
                    accepted,
                },
            )?;
        }
        Format::Table => {
            emit(
                common,
                format!(
                    "coherence     {}\nnaturality    {}\nnormalization {}\nverdict       {verdict} (tolerance {})\n",
                    fmt_sig(report.coherence),
                    fmt_sig(report.naturality),
                    fmt_sig(report.normalization),
                    fmt_sig(common.tolerance)
                ),
            )?;
        }
    }
    if accepted {
        Ok(())
    } else {
        Err(Error::Rejected { context: "quantizer verify".into(), residual: report.max() })
    }
}

pub fn quantizer_blocks(common: &Common) -> Result<()> {
    let space = space_of(common)?;
    let q = load_quantizer(common, &space)?;
    let blocks = space.blocks_from_algebra(&q)?;
    let dump = BlocksJson::from_blocks(space.group().kind(), &blocks);
    match common.format {
        Format::Json => emit_json(common, &dump),
        Format::Table => {
            let rows: Vec<Vec<String>> = blocks
                .iter()
                .map(|((a, b, g), m)| {
                    let rendered = if m.rows() == 1 {
                        fmt_complex(m[(0, 0)])
                    } else {
                        matrix_to_json(m)
                            .iter()
                            .map(|row| {
                                let cells: Vec<String> =
                                    row.iter().map(|c| fmt_complex(from_cpx(*c))).collect();
                                format!("[{}]", cells.join(", "))
                            })
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    vec![format!("q[{a},{b};{g}]"), rendered]
                })
                .collect();
            emit(common, render_table(&["block".into(), "value".into()], &rows))
        }
    }
}

pub fn quantizer_assemble(common: &Common) -> Result<()> {
    let space = space_of(common)?;
    let file: BlocksJson = read_input(common)?;
    let want = space.group().kind().to_string();
    if file.group != want {
        return Err(Error::Mismatch(format!(
            "block file is over '{}', expected '{want}'",
            file.group
        )));
    }
    let blocks = file.resolve(space.dual())?;
    let q = space.algebra_from_blocks(&blocks)?;
    let dump = ElementJson::from_element(q.element());
    emit_json(common, &dump)
}

pub fn quantizer_classify(which: &str, common: &Common) -> Result<()> {
    let kind = match which.to_ascii_lowercase().as_str() {
        "s3" => GroupKind::Symmetric(3),
        "a4" => GroupKind::Alternating(4),
        other => {
            return Err(Error::Unsupported(format!(
                "classification for '{other}' (supported: s3, a4)"
            )))
        }
    };
    let group = kind.build()?;
    let space = QuantizerSpace::new(&group, common.effective_seed())?;
    let cls = classify(&space)?;
    // sample parameters for the residual column
    let sample = [Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)];
    #[derive(Serialize)]
    struct FamilyDump {
        name: String,
        row: Vec<String>,
        matrix_forms: Vec<String>,
        merged_rows: Vec<String>,
        parameters: usize,
        sample_block_coherence_residual: f64,
    }
    let mut dumps = Vec::new();
    for fam in &cls.families {
        let row: Vec<String> = fam
            .entries
            .iter()
            .map(|e| match e {
                Entry::Zero => "0".to_string(),
                Entry::One => "1".to_string(),
                Entry::Param(0) => "l".to_string(),
                Entry::Param(_) => "k".to_string(),
            })
            .collect();
        let scalar_params: Vec<Complex64> =
            sample.iter().take(fam.scalar_param_count).copied().collect();
        let variant = fam.matrix_forms.first().map(|form| FamilyVariant {
            form: *form,
            params: sample.iter().take(form.param_count()).copied().collect(),
        });
        let instance = fam.instantiate(
            &cls.scalar_keys,
            cls.dual_size,
            &scalar_params,
            variant.as_ref(),
        )?;
        let resid = instance.max_coherence_residual(&space)?;
        dumps.push(FamilyDump {
            name: fam.name.clone(),
            row,
            matrix_forms: fam.matrix_forms.iter().map(|f| f.label().to_string()).collect(),
            merged_rows: fam.merged_rows.clone(),
            parameters: fam.scalar_param_count,
            sample_block_coherence_residual: resid,
        });
    }
    match common.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Dump {
                group: String,
                columns: Vec<String>,
                families: Vec<FamilyDump>,
                uncataloged_rows: Vec<Vec<String>>,
            }
            let dump = Dump {
                group: kind.to_string(),
                columns: cls.scalar_keys.iter().map(|s| symbol_name(*s)).collect(),
                families: dumps,
                uncataloged_rows: cls
                    .uncataloged
                    .iter()
                    .map(|u| {
                        u.entries
                            .iter()
                            .map(|e| match e {
                                Entry::Zero => "0".to_string(),
                                Entry::One => "1".to_string(),
                                Entry::Param(_) => "l".to_string(),
                            })
                            .collect()
                    })
                    .collect(),
            };
            emit_json(common, &dump)
        }
        Format::Table => {
            let mut header = vec!["family".to_string()];
            header.extend(cls.scalar_keys.iter().map(|s| symbol_name(*s)));
            if cls.dual_size == 4 {
                header.push("[q[3,3;3]]".into());
            }
            header.push("residual@sample".into());
            header.push("notes".into());
            let rows: Vec<Vec<String>> = dumps
                .iter()
                .map(|d| {
                    let mut row = vec![d.name.clone()];
                    row.extend(d.row.iter().cloned());
                    if cls.dual_size == 4 {
                        row.push(d.matrix_forms.join(" | "));
                    }
                    row.push(fmt_sig(d.sample_block_coherence_residual));
                    let mut notes = Vec::new();
                    if d.parameters > 0 {
                        notes.push(format!("{}-parameter", d.parameters));
                    }
                    if !d.merged_rows.is_empty() {
                        notes.push(format!("merges rows {}", d.merged_rows.join(",")));
                    }
                    row.push(notes.join("; "));
                    row
                })
                .collect();
            emit(common, render_table(&header, &rows))
        }
    }
}

pub fn quantizer_relations(which: &str, common: &Common) -> Result<()> {
    let kind = GroupKind::parse(which)?;
    let group = kind.build()?;
    let dual = Dual::new(&group, common.effective_seed())?;
    let relations = extract_relations(&dual)?;
    match common.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Dump {
                group: String,
                relations: Vec<String>,
            }
            emit_json(
                common,
                &Dump {
                    group: kind.to_string(),
                    relations: relations.iter().map(|r| r.render(&symbol_name)).collect(),
                },
            )
        }
        Format::Table => {
            let mut out = format!("{} scalar block relations for {}\n", relations.len(), kind);
            for r in &relations {
                out.push_str("  ");
                out.push_str(&r.render(&symbol_name));
                out.push('\n');
            }
            emit(common, out)
        }
    }
}

fn dual_group_from_spec(spec: &str) -> Result<(Arc<FiniteGroup>, DualGroup)> {
    let group = GroupKind::parse(spec)?.build()?;
    let dual = DualGroup::for_group(&group)?;
    Ok((group, dual))
}

pub fn cocycle_check_cmd(common: &Common) -> Result<()> {
    let file: CocycleJson = read_input(common)?;
    let (_, dual) = dual_group_from_spec(&file.dual)?;
    let z = file.resolve(&dual)?;
    let resid = abelian::cocycle_check(&dual, &z.values);
    let ok = resid < common.tolerance;
    emit(
        common,
        format!(
            "cocycle identity residual {} -> {}\n",
            fmt_sig(resid),
            if ok { "valid" } else { "invalid" }
        ),
    )?;
    if ok {
        Ok(())
    } else {
        Err(Error::Rejected { context: "cocycle check".into(), residual: resid })
    }
}

pub fn cocycle_quantize(common: &Common) -> Result<()> {
    let file: CocycleJson = read_input(common)?;
    let (group, dual) = dual_group_from_spec(&file.dual)?;
    let z = file.resolve(&dual)?;
    let space = QuantizerSpace::new(&group, common.effective_seed())?;
    let q = abelian::quantizer_from_cocycle(&space, &dual, &z, common.tolerance)?;
    emit_json(common, &ElementJson::from_element(q.element()))
}

pub fn cocycle_reduce(common: &Common) -> Result<()> {
    let file: CocycleJson = read_input(common)?;
    let (group, dual) = dual_group_from_spec(&file.dual)?;
    let z = file.resolve(&dual)?;
    let reduction = abelian::coboundary_reduce(&dual, &z, common.tolerance)?;
    #[derive(Serialize)]
    struct Dump {
        representative: CocycleJson,
        gauge: Vec<Cpx>,
        pairing_exponents: Vec<((usize, usize), i64)>,
        trivial_class: bool,
    }
    let trivial = reduction.pairing_exponents.iter().all(|(_, s)| *s == 0);
    let dump = Dump {
        representative: CocycleJson::from_cocycle(group.kind(), &reduction.representative),
        gauge: reduction.gauge.iter().map(|z| to_cpx(*z)).collect(),
        pairing_exponents: reduction.pairing_exponents.clone(),
        trivial_class: trivial,
    };
    match common.format {
        Format::Json => emit_json(common, &dump),
        Format::Table => emit(
            common,
            format!(
                "cohomology class: {}\npairing exponents: {:?}\n",
                if trivial { "trivial" } else { "nontrivial" },
                reduction.pairing_exponents
            ),
        ),
    }
}

pub fn algebra_quantize(
    common: &Common,
    builtin: Option<&str>,
    quantizer_path: &str,
) -> Result<()> {
    let group = group_of(common)?;
    let space = QuantizerSpace::new(&group, common.effective_seed())?;
    let algebra = match (builtin, &common.input) {
        (Some("functions"), _) => EquivariantAlgebra::functions_on_group(&group),
        (Some("characters"), _) => {
            let dual = DualGroup::for_group(&group)?;
            EquivariantAlgebra::character_graded(&group, &dual)?
        }
        (Some(other), _) => {
            return Err(Error::Invalid(format!(
                "unknown builtin algebra '{other}' (use functions or characters)"
            )))
        }
        (None, Some(_)) => {
            let file: AlgebraJson = read_input(common)?;
            file.resolve(&group)?
        }
        (None, None) => {
            return Err(Error::Invalid("need --algebra <builtin> or --in <file>".into()))
        }
    };
    let qfile: ElementJson = read_file(quantizer_path)?;
    let q = Quantizer::new(qfile.resolve(space.square())?);
    let deformed =
        quantizer_core::actions::quantize_algebra(&space, &algebra, &q, common.tolerance)?;
    let mut dump = AlgebraJson::from_algebra(group.kind(), &deformed);
    dump.associativity_residual = Some(deformed.associativity());
    dump.equivariance_residual = Some(deformed.equivariance_residual(&group));
    match common.format {
        Format::Json => emit_json(common, &dump),
        Format::Table => emit(
            common,
            format!(
                "deformed algebra over {} (dim {})\nassociativity residual {}\nequivariance residual {}\n",
                group.kind(),
                deformed.dim(),
                fmt_sig(dump.associativity_residual.unwrap()),
                fmt_sig(dump.equivariance_residual.unwrap())
            ),
        ),
    }
}
