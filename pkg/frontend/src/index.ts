/**
 * Typed-array bindings over the graphcurv CLI.
 *
 * Arrays are the only exchange type: graphs go in as an E x 2 edge array
 * plus a node count, results come back as Float64Array blocks with a small
 * manifest. All computation happens in the Python core; this layer only
 * speaks the CLI's documented file formats (graph JSON in, CSV/JSON plus
 * manifest sidecars out).
 */

import { spawnSync } from 'node:child_process';
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

export type EdgePair = [number, number];

export type CurvatureMethod =
  | 'orc-exact'
  | 'orc-sinkhorn'
  | 'frc'
  | 'afrc3'
  | 'afrc4';

export type LcpVariant = 'summary' | 'extremes' | 'minmax' | 'combinatorial';

export interface CurvatureParams {
  /** Idleness self-mass fraction in [0, 1); omit for open-neighborhood measures. */
  alpha?: number;
  /** Sinkhorn regularization (orc-sinkhorn only). */
  eps?: number;
  /** Sinkhorn iteration cap. */
  iters?: number;
}

export interface CurvatureResult {
  /** One curvature per edge, aligned with `edgeOrder`. */
  kappa: Float64Array;
  /** Canonical (min, max) edge keys in the core's output order. */
  edgeOrder: EdgePair[];
  method: string;
  /** Per-edge convergence flags (Sinkhorn only). */
  converged?: boolean[];
}

export interface EncodeSpec {
  lcp?: LcpVariant;
  ldp?: boolean;
  /** Laplacian eigenvector count. */
  lape?: number;
  /** Random-walk length. */
  rwpe?: number;
  method?: CurvatureMethod;
  alpha?: number;
}

export interface EncodeResult {
  /** Row-major |V| x width feature block; row i is node i. */
  data: Float64Array;
  rows: number;
  width: number;
  manifest: { groups: string[]; widths: number[]; curvatureMethod: string | null };
}

export interface RewireParams {
  nIters?: number;
  kAdd?: number;
  kRemove?: number;
  hPerEdge?: number;
  alpha?: number;
}

export interface RewireAction {
  op: 'add' | 'remove';
  u: number;
  v: number;
  triggerU: number | null;
  triggerV: number | null;
  iter: number;
}

export interface RewireResult {
  numNodes: number;
  edges: EdgePair[];
  plan: RewireAction[];
}

/** Override with GRAPHCURV_BIN when the CLI is not on PATH. */
const CLI = process.env.GRAPHCURV_BIN ?? 'graphcurv';

export class GraphcurvError extends Error {}

function validateEdges(edges: ArrayLike<ArrayLike<number>>, numNodes: number): EdgePair[] {
  if (!Number.isInteger(numNodes) || numNodes < 0) {
    throw new GraphcurvError(`invalid node count ${numNodes}`);
  }
  const seen = new Set<number>();
  const out: EdgePair[] = [];
  for (let i = 0; i < edges.length; i++) {
    const pair = edges[i];
    const u = pair[0];
    const v = pair[1];
    if (!Number.isInteger(u) || !Number.isInteger(v)) {
      throw new GraphcurvError(`edge ${i} is not an integer pair`);
    }
    if (u === v) {
      throw new GraphcurvError(`edge ${i} is a self-loop (${u},${u})`);
    }
    if (u < 0 || v < 0 || u >= numNodes || v >= numNodes) {
      throw new GraphcurvError(`edge ${i} (${u},${v}) out of range for ${numNodes} nodes`);
    }
    const key = Math.min(u, v) * numNodes + Math.max(u, v);
    if (seen.has(key)) {
      throw new GraphcurvError(`duplicate edge (${u},${v})`);
    }
    seen.add(key);
    out.push([Math.min(u, v), Math.max(u, v)]);
  }
  return out;
}

function runCli(args: string[]): string {
  const result = spawnSync(CLI, args, { encoding: 'utf8' });
  if (result.error) {
    throw new GraphcurvError(`failed to launch ${CLI}: ${result.error.message}`);
  }
  if (result.status !== 0) {
    throw new GraphcurvError(
      `${CLI} ${args[0]} exited with ${result.status}: ${result.stderr.trim()}`,
    );
  }
  return result.stdout;
}

function withWorkdir<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), 'graphcurv-'));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function writeGraph(dir: string, edges: EdgePair[], numNodes: number): string {
  const path = join(dir, 'graph.json');
  writeFileSync(path, JSON.stringify({ num_nodes: numNodes, edges }));
  return path;
}

/** Per-edge curvature as a typed array plus the edge order it follows. */
export function curvature(
  edges: ArrayLike<ArrayLike<number>>,
  numNodes: number,
  method: CurvatureMethod = 'orc-exact',
  params: CurvatureParams = {},
): CurvatureResult {
  const canonical = validateEdges(edges, numNodes);
  return withWorkdir((dir) => {
    const graphPath = writeGraph(dir, canonical, numNodes);
    const outPath = join(dir, 'curv.csv');
    const args = ['curvature', '--graph', graphPath, '--method', method, '--out', outPath];
    if (params.alpha !== undefined) args.push('--alpha', String(params.alpha));
    if (params.eps !== undefined) args.push('--eps', String(params.eps));
    if (params.iters !== undefined) args.push('--iters', String(params.iters));
    runCli(args);
    const lines = readFileSync(outPath, 'utf8').trim().split('\n');
    const header = lines[0].split(',');
    const hasFlags = header.includes('converged');
    const kappa = new Float64Array(lines.length - 1);
    const edgeOrder: EdgePair[] = [];
    const converged: boolean[] = [];
    for (let i = 1; i < lines.length; i++) {
      const cols = lines[i].split(',');
      edgeOrder.push([Number(cols[0]), Number(cols[1])]);
      kappa[i - 1] = Number(cols[2]);
      if (hasFlags) converged.push(cols[4] === '1');
    }
    const out: CurvatureResult = { kappa, edgeOrder, method };
    if (hasFlags) out.converged = converged;
    return out;
  });
}

/** Assembled node-encoding matrix (row-major) with its column manifest. */
export function encode(
  edges: ArrayLike<ArrayLike<number>>,
  numNodes: number,
  spec: EncodeSpec,
): EncodeResult {
  const canonical = validateEdges(edges, numNodes);
  return withWorkdir((dir) => {
    const graphPath = writeGraph(dir, canonical, numNodes);
    const outPath = join(dir, 'features.csv');
    const args = ['encode', '--graph', graphPath, '--out', outPath];
    if (spec.lcp) args.push('--lcp', spec.lcp);
    if (spec.ldp) args.push('--ldp');
    if (spec.lape) args.push('--lape', String(spec.lape));
    if (spec.rwpe) args.push('--rwpe', String(spec.rwpe));
    if (spec.method) args.push('--method', spec.method);
    if (spec.alpha !== undefined) args.push('--alpha', String(spec.alpha));
    runCli(args);
    const manifest = JSON.parse(readFileSync(`${outPath}.manifest.json`, 'utf8'));
    const lines = readFileSync(outPath, 'utf8').trim().split('\n');
    const rows = lines.length - 1;
    const width = manifest.total_width as number;
    const data = new Float64Array(rows * width);
    for (let i = 1; i < lines.length; i++) {
      const cols = lines[i].split(',');
      const node = Number(cols[0]);
      for (let j = 0; j < width; j++) {
        data[node * width + j] = Number(cols[1 + j]);
      }
    }
    return {
      data,
      rows,
      width,
      manifest: {
        groups: manifest.groups,
        widths: manifest.widths,
        curvatureMethod: manifest.curvature_method ?? null,
      },
    };
  });
}

/** Curvature rewiring; returns the new edge set and the replayable plan. */
export function rewire(
  edges: ArrayLike<ArrayLike<number>>,
  numNodes: number,
  params: RewireParams = {},
): RewireResult {
  const canonical = validateEdges(edges, numNodes);
  return withWorkdir((dir) => {
    const graphPath = writeGraph(dir, canonical, numNodes);
    const outPath = join(dir, 'rewired.json');
    const planPath = join(dir, 'plan.jsonl');
    const args = [
      'rewire', '--graph', graphPath, '--out', outPath, '--plan-out', planPath,
      '--n-iters', String(params.nIters ?? 3),
      '--k-add', String(params.kAdd ?? 4),
      '--k-remove', String(params.kRemove ?? 4),
      '--h-per-edge', String(params.hPerEdge ?? 1),
    ];
    if (params.alpha !== undefined) args.push('--alpha', String(params.alpha));
    runCli(args);
    const rewired = JSON.parse(readFileSync(outPath, 'utf8'));
    const planText = readFileSync(planPath, 'utf8').trim();
    const plan: RewireAction[] = planText
      ? planText.split('\n').map((line) => {
          const rec = JSON.parse(line);
          return {
            op: rec.op,
            u: rec.u,
            v: rec.v,
            triggerU: rec.trigger_u,
            triggerV: rec.trigger_v,
            iter: rec.iter,
          };
        })
      : [];
    return { numNodes: rewired.num_nodes, edges: rewired.edges, plan };
  });
}

/** Core tool version (matches the Python package version). */
export function version(): string {
  const out = runCli(['--version']).trim();
  const m = out.match(/(\d+\.\d+\.\d+)/);
  return m ? m[1] : out;
}
