/** Optimistic mutation helper: apply the UI change immediately, fire the
 * API call, roll back to the captured state if it fails. */

export async function optimistic<S>(
  snapshot: () => S,
  apply: () => void,
  call: () => Promise<unknown>,
  restore: (previous: S) => void,
  onError?: (error: unknown) => void,
): Promise<boolean> {
  const previous = snapshot();
  apply();
  try {
    await call();
    return true;
  } catch (error: unknown) {
    restore(previous);
    if (onError) onError(error);
    return false;
  }
}
