export interface GraphView {
  vertices: number[];
  edges: [number, number][];
}

export type Turn = "ann_to_pick" | "ben_to_colour";
export type Status = "in_play" | "ann_won" | "ben_won";
export type Role = "ann" | "ben";

export interface SessionView {
  id: string;
  status: Status;
  turn: Turn;
  side_to_move: Role;
  human_role: Role;
  engine_policy: { kind: string; [k: string]: unknown };
  policy_used: string | null;
  graph: GraphView;
  lists: Record<string, number[]>;
  coloured: Record<string, number>;
  picked: number | null;
  effective_lists: Record<string, number[]>;
  dead_vertices: number[];
  history: unknown[];
}

export interface Hint {
  kind: "vertex" | "colour";
  value: number;
  evaluation: "win" | "loss" | "heuristic";
  plies: number;
}

export interface PresetInfo {
  name: string;
  params: Record<string, string>;
  description: string;
}

export interface ApiErrorBody {
  error: { kind: string; detail: string };
}
