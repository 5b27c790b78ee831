//! The fixed input corpus shared by the golden and schema tests.

#![allow(dead_code)]

/// A named invocation, its golden-file extension and its expected exit code.
pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub ext: &'static str,
    pub code: u8,
}

const fn case(
    name: &'static str,
    args: &'static [&'static str],
    ext: &'static str,
    code: u8,
) -> Case {
    Case {
        name,
        args,
        ext,
        code,
    }
}

pub const CORPUS: &[Case] = &[
    case("enumerate_n3", &["enumerate", "--n", "3"], "json", 0),
    case(
        "enumerate_n4_rank2",
        &["enumerate", "--n", "4", "--rank", "2"],
        "json",
        0,
    ),
    case(
        "enumerate_labels",
        &["--labels", "a,b,c", "enumerate", "--n", "3", "--limit", "2"],
        "json",
        0,
    ),
    case("nmin_two_blocks", &["nmin", "0,1,2,3|4,5,6"], "json", 0),
    case("nmin_finest", &["nmin", "0|1|2"], "json", 0),
    case("nmin_coarsest4", &["nmin", "0,1,2,3"], "json", 0),
    case(
        "nmin_empty_product",
        &["nmin", "0|1|2", "--convention", "empty-product"],
        "json",
        0,
    ),
    case(
        "nmin_labels",
        &["--labels", "x1,x2,x3,x4", "nmin", "x1,x2|x3,x4"],
        "json",
        0,
    ),
    case(
        "metric_crossed_pairs",
        &["metric", "0,1|2,3", "0,2|1,3"],
        "json",
        0,
    ),
    case("metric_self", &["metric", "0,1,2|3", "0,1,2|3"], "json", 0),
    case(
        "metric_extremes",
        &["metric", "0|1|2|3", "0,1,2,3"],
        "json",
        0,
    ),
    case(
        "decomps_minimal_k4",
        &["decomps", "0,1,2,3", "--minimal-only"],
        "json",
        0,
    ),
    case(
        "decomps_minimal_pair",
        &["decomps", "0,1|2", "--minimal-only"],
        "json",
        0,
    ),
    case("decomps_finest", &["decomps", "0|1"], "json", 0),
    case("decomps_all_k3", &["decomps", "0,1,2"], "json", 0),
    case(
        "decomps_truncated",
        &["decomps", "0,1,2,3,4", "--limit", "5"],
        "json",
        0,
    ),
    case(
        "red_count_both",
        &[
            "red-count",
            "--n",
            "4",
            "--reds",
            "0-1,0-2,1-2,2-3",
            "--rank",
            "2",
            "--size",
            "2",
        ],
        "json",
        0,
    ),
    case(
        "red_count_base",
        &[
            "red-count",
            "--n",
            "4",
            "--reds",
            "0-1,1-2",
            "--rank",
            "0",
            "--size",
            "0",
        ],
        "json",
        0,
    ),
    case(
        "red_count_rank_above_size",
        &[
            "red-count",
            "--n",
            "4",
            "--reds",
            "0-1,1-2,2-3",
            "--rank",
            "2",
            "--size",
            "1",
            "--engine",
            "recursive",
        ],
        "json",
        0,
    ),
    case(
        "red_count_nonempty",
        &[
            "red-count",
            "--n",
            "3",
            "--reds",
            "0-1,1-2,0-2",
            "--rank",
            "1",
            "--size",
            "1",
            "--nonempty-joins",
        ],
        "json",
        0,
    ),
    case(
        "red_table_forest",
        &["red-table", "--n", "4", "--reds", "0-1,1-2,2-3"],
        "json",
        0,
    ),
    case(
        "red_table_triangle_csv",
        &[
            "red-table",
            "--n",
            "3",
            "--reds",
            "0-1,1-2,0-2",
            "--format",
            "csv",
        ],
        "csv",
        0,
    ),
    case(
        "red_table_oracle",
        &[
            "red-table",
            "--n",
            "4",
            "--reds",
            "0-1,0-2,1-2,2-3",
            "--engine",
            "oracle",
        ],
        "json",
        0,
    ),
    case("check_n4", &["check", "--n", "4"], "json", 1),
    case("check_n3", &["check", "--n", "3"], "json", 1),
    case(
        "check_n5_monoid",
        &["check", "--n", "5", "--properties", "hfm,ufm,hfrl"],
        "json",
        1,
    ),
    case(
        "check_skipped",
        &["check", "--n", "9", "--properties", "metric"],
        "json",
        0,
    ),
    case(
        "export_dot_partition",
        &["export-dot", "--partition", "0,1,2|3,4"],
        "dot",
        0,
    ),
    case(
        "export_dot_reds",
        &["export-dot", "--n", "4", "--reds", "0-1,1-2,2-3,0-3"],
        "dot",
        0,
    ),
    case(
        "export_dot_hasse3",
        &["export-dot", "--hasse", "3"],
        "dot",
        0,
    ),
];

pub fn run(args: &[&str]) -> atomdec_cli::Outcome {
    atomdec_cli::run_args(std::iter::once("atomdec").chain(args.iter().copied()))
}
