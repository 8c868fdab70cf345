package headfirst.simplefactory;

public abstract class Vehicle {
    protected int wheels;

    public void service() {
        System.out.println("Servicing a vehicle with " + wheels + " wheels");
    }
}
